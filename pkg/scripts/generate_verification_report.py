#!/usr/bin/env python3
"""
Verification report generator
Runs every property suite and writes the key-value report to a file
"""

import argparse
import os
import sys

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.settings import get_config
from utils.text_io import format_report
from utils.verification import SUITES, VerificationEngine


def run_suites(engine: VerificationEngine, seed: int):
    """Run each suite and print a one-line summary per check"""
    reports = {}
    for suite in SUITES:
        print(f"\n🧪 Running {suite} suite...")
        report = engine.run_suite(suite, seed=seed)
        for name, check in report['checks'].items():
            marker = '✅' if check['pass'] else '❌'
            line = f"  {marker} {name}: {check['checked']} checked"
            if 'worst_ratio' in check:
                line += f", worst ratio {check['worst_ratio']}"
            print(line)
            if 'counterexample' in check:
                print(f"     ↳ {check['counterexample']}")
        reports[suite] = report
    return reports


def main():
    parser = argparse.ArgumentParser(description='Run all verification suites')
    parser.add_argument('--output', default='verification_report.txt')
    parser.add_argument('--seed', type=int, default=None)
    parser.add_argument('--config', default=None,
                        help='configuration name (default, testing, benchmark)')
    args = parser.parse_args()

    app_config = get_config(args.config)
    seed = args.seed if args.seed is not None else app_config.get_default_seed()
    print("📊 Generating Verification Report...")
    print("=" * 50)

    reports = run_suites(VerificationEngine(app_config), seed)
    passed = all(r['pass'] for r in reports.values())

    with open(args.output, 'w') as f:
        f.write(format_report({'pass': passed, 'suites': reports}))

    print("\n" + "=" * 50)
    print(f"📄 Report written to: {args.output}")
    print("🎉 All suites passed!" if passed else "⚠️  Some checks failed, see the report.")
    return 0 if passed else 1


if __name__ == '__main__':
    sys.exit(main())

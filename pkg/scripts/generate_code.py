#!/usr/bin/env python3
"""
Indel code generator
Writes a code file for an alphabet of gamma symbols at the given epsilon
"""

import argparse
import os
import sys

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.settings import get_config
from models.errors import StrembedError
from services.code_service import CodeService


def generate(gamma: int, epsilon: str, seed: int, path: str) -> bool:
    """Plan parameters, search for a code and save it"""
    print(f"🔧 Planning parameters for gamma={gamma}, epsilon={epsilon}...")
    code_service = CodeService(get_config())

    try:
        params = code_service.plan_parameters(gamma, epsilon)
    except StrembedError as e:
        print(f"❌ Invalid parameters: {e}")
        return False

    print(f"📏 Codeword length k = {params.k}, code alphabet size = {params.sigma_size}")
    print(f"🎯 Pairwise LCS budget: {params.lcs_budget}")
    if params.snapped:
        print(f"⚠️  Epsilon snapped from {params.requested_epsilon} to {params.epsilon}")

    try:
        code = code_service.generate_code(params, seed)
    except StrembedError as e:
        print(f"❌ Generation failed: {e}")
        return False

    report = code_service.validate_code(code)
    if not report.passed:
        print(f"❌ Generated code failed its check (max pairwise LCS {report.max_pairwise_lcs})")
        return False

    code_service.save_code(code, path)
    print(f"✅ Wrote {len(code)} codewords to {path}")
    print(f"📊 Max pairwise LCS {report.max_pairwise_lcs}, min pairwise indel distance {report.min_pairwise_indel}")
    return True


def main():
    parser = argparse.ArgumentParser(description='Generate an indel code file')
    parser.add_argument('path')
    parser.add_argument('--gamma', type=int, default=16)
    parser.add_argument('--eps', default='1/4')
    parser.add_argument('--seed', type=int, default=None)
    args = parser.parse_args()

    seed = args.seed if args.seed is not None else get_config().get_default_seed()
    return 0 if generate(args.gamma, args.eps, seed, args.path) else 1


if __name__ == '__main__':
    sys.exit(main())

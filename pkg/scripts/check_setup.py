#!/usr/bin/env python3
"""
Setup check for the toolkit
Verifies the dependency stack and the active configuration
"""

import os
import sys

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))


def check_imports() -> bool:
    """Check that all required packages can be imported"""
    print("🔍 Testing package imports...")
    ok = True
    for package in ('flask', 'flask_cors', 'dotenv', 'numpy'):
        try:
            __import__(package)
            print(f"✅ {package} imported successfully")
        except ImportError as e:
            print(f"❌ {package} import failed: {e}")
            ok = False
    return ok


def check_configuration() -> bool:
    """Validate the active configuration"""
    print("\n🔍 Validating configuration...")
    from config.settings import get_config, validate_config

    result = validate_config()
    print(f"📋 Active configuration: {get_config().__name__}")
    for warning in result['warnings']:
        print(f"⚠️  {warning}")
    for issue in result['issues']:
        print(f"❌ {issue}")
    if result['config_valid']:
        print("✅ Configuration is valid")
    return result['config_valid']


def check_smoke() -> bool:
    """A distance computation through the full service stack"""
    print("\n🔍 Running a smoke computation...")
    from services.metrics_service import MetricsService
    from utils.text_io import parse_strings

    x, y = parse_strings('kitten', 'sitting')
    distance = MetricsService().edit_distance(x, y)
    if distance == 3:
        print("✅ edit distance kitten -> sitting = 3")
        return True
    print(f"❌ unexpected edit distance {distance}")
    return False


def main():
    print("🚀 strembed setup check")
    print("=" * 40)
    ok = check_imports() and check_configuration() and check_smoke()
    print("\n" + "=" * 40)
    print("🎉 Setup looks good!" if ok else "❌ Setup is incomplete, see the messages above.")
    return 0 if ok else 1


if __name__ == '__main__':
    sys.exit(main())

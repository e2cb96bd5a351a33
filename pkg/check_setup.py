import sys
import os
from pathlib import Path


def check_python_version():
    """Check Python version is 3.10+"""
    print("Checking Python version...", end=" ")
    version = sys.version_info
    if version.major >= 3 and version.minor >= 10:
        print(f"✅ Python {version.major}.{version.minor}.{version.micro}")
        return True
    else:
        print(f"❌ Python {version.major}.{version.minor} (need 3.10+)")
        return False


def check_imports():
    """Check all required packages can be imported"""
    packages = [
        ("pydantic", "Pydantic"),
        ("pydantic_settings", "pydantic-settings"),
        ("dotenv", "python-dotenv"),
        ("networkx", "NetworkX"),
        ("cachetools", "cachetools"),
        ("pytest", "pytest"),
    ]

    all_ok = True
    print("\nChecking Python packages:")

    for module, name in packages:
        print(f"  {name}...", end=" ")
        try:
            __import__(module)
            print("✅")
        except ImportError:
            print("❌ Not installed")
            all_ok = False

    return all_ok


def check_settings():
    """Check PRCLAB_* settings load and the optional JSON config exists"""
    print("\nChecking configuration...")

    config_path = os.environ.get("PRCLAB_CONFIG")
    if config_path and not Path(config_path).is_file():
        print(f"  ❌ PRCLAB_CONFIG points to a missing file: {config_path}")
        return False

    try:
        from app.config import get_settings
        settings = get_settings()
    except Exception as e:
        print(f"  ❌ Settings failed to load: {str(e)[:80]}")
        return False

    print(f"  ✅ budget: {settings.budget_nodes} nodes / {settings.budget_secs}s per solve")
    print(f"  ✅ determinism: {settings.determinism}, jobs: {settings.jobs}, seed: {settings.seed}")
    if not Path(".env").exists():
        print("  ⚠️  .env not found (optional, defaults in use)")
    return True


def check_solver():
    """Solve one small graph end to end"""
    print("\nChecking solver...", end=" ")
    try:
        from app.modules import generate, parse_family_spec, prc
        from app.schemas import SearchConfig

        result = prc(generate(parse_family_spec("cycle:6")), SearchConfig(node_budget=100_000, time_budget=10.0))
    except Exception as e:
        print(f"❌ Error: {str(e)[:80]}")
        return False

    if result.exact and result.value == 3:
        print("✅ prc(C6) = 3")
        return True
    print(f"❌ prc(C6) returned {result.value} (exact={result.exact})")
    return False


def check_directories():
    """Check the sweep output directory exists"""
    print("\nChecking directories...")

    path = Path(os.environ.get("PRCLAB_OUTPUT_DIR", "outputs"))
    if path.exists():
        print(f"  ✅ {path}/")
    else:
        path.mkdir(parents=True, exist_ok=True)
        print(f"  ✅ {path}/ (created)")

    return True


def main():
    print("=" * 50)
    print("prclab - Setup Verification")
    print("=" * 50)
    print()

    checks = [
        check_python_version(),
        check_imports(),
        check_settings(),
        check_solver(),
        check_directories(),
    ]

    print()
    print("=" * 50)

    if all(checks):
        print("✅ All checks passed! Ready to run.")
        print()
        print("Try:")
        print("  python -m app solve wheel:5 --param prc")
        print("  python -m app sweep --family cycle:4..12")
        return 0
    else:
        print("❌ Some checks failed. Please fix the issues above.")
        return 1


if __name__ == "__main__":
    sys.exit(main())

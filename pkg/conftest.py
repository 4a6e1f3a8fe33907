import os
import sys

# Make `import src...` work when pytest is started from the repo root.
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive or large-instance checks")

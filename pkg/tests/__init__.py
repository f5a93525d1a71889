import os

# Ensure PYTEST_RUNNING is set before imports (in case conftest.py hasn't run yet)
if "PYTEST_RUNNING" not in os.environ:
    os.environ["PYTEST_RUNNING"] = "true"

import sys
from pathlib import Path

# Make the sibling oracles module importable regardless of invocation dir.
sys.path.insert(0, str(Path(__file__).resolve().parent))

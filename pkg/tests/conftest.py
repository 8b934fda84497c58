import sys
from pathlib import Path

# make the in-repo oracle helpers importable as tests.<module> regardless of
# the invocation directory
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

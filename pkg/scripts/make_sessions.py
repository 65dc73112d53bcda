"""Write the example session files into the package data directory."""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from nashblow.catalog import ALL  # noqa: E402
from nashblow.session import DATA_DIR  # noqa: E402


def main():
    DATA_DIR.mkdir(exist_ok=True)
    for name, build in ALL.items():
        path = DATA_DIR / f"{name}.json"
        path.write_text(json.dumps(build(), indent=2) + "\n")
        print(path)


if __name__ == "__main__":
    main()

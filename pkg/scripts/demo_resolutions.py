#!/usr/bin/env python3
"""End-to-end demo: two marked bases, their resolutions and minimizations.

The second ideal is the interesting one: its first element is marked on
x2*x1 although the tail contains the larger terms x2^2 and x1^2, so the set
is not a Groebner basis for any term order, yet the marked machinery
certifies it and resolves the ideal.
"""

import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from marked_bases.cli import main

TWISTED = """\
ring 3
ideal J = x2^3, x2^2*x1, x2*x1, x1*x0, x1^2
marked G = [x2^3], [x2^2*x1], [x2*x1], [x1*x0] + x2^2, [x1^2]
"""

NON_GROEBNER = """\
ring 3
ideal J = x2*x1, x2^2*x1, x2^3, x1^3, x2^2*x0, x1^2*x0
marked G = [x2*x1] - x2^2 - x1^2, [x2^2*x1], [x2^3], [x1^3], [x2^2*x0], [x1^2*x0]
"""


def run(label: str, doc: str) -> None:
    print(f"=== {label} ===")
    with tempfile.NamedTemporaryFile("w", suffix=".mb", delete=False) as fh:
        fh.write(doc)
        path = fh.name
    for argv in (
        ["pommaret", path],
        ["check", path],
        ["resolve", path, "--minimize"],
        ["bounds", path],
    ):
        print(f"$ mbases {' '.join(argv)}")
        code = main(argv)
        print(f"(exit {code})\n")
    Path(path).unlink()


if __name__ == "__main__":
    run("marked basis with one binomial element", TWISTED)
    run("marked basis that is not a Groebner basis", NON_GROEBNER)

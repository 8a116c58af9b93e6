#!/usr/bin/env python3
"""Smoke test for the aszeta_py extension module.

Builds the cdylib if needed, copies it next to a temp directory under the
importable name, and exercises the main types and operations end to end.

Run from the repository root:  python3 python/smoke_test.py
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def locate_or_build_cdylib() -> Path:
    candidates = [
        ROOT / "target" / "release" / "libaszeta_py.so",
        ROOT / "target" / "release" / "libaszeta_py.dylib",
        ROOT / "target" / "release" / "aszeta_py.dll",
    ]
    for c in candidates:
        if c.exists():
            return c
    print("building aszeta-py (cargo build --release -p aszeta-py) ...")
    subprocess.run(
        ["cargo", "build", "--release", "-p", "aszeta-py"], cwd=ROOT, check=True
    )
    for c in candidates:
        if c.exists():
            return c
    raise SystemExit("could not find the built aszeta_py cdylib")


def import_module(tmp: Path):
    lib = locate_or_build_cdylib()
    suffix = ".pyd" if lib.suffix == ".dll" else ".so"
    shutil.copy2(lib, tmp / f"aszeta_py{suffix}")
    sys.path.insert(0, str(tmp))
    import aszeta_py

    return aszeta_py


checks = 0


def check(label, got, expected):
    global checks
    checks += 1
    if got != expected:
        raise SystemExit(f"FAIL {label}: got {got!r}, expected {expected!r}")
    print(f"ok  {label}: {got!r}")


def main():
    with tempfile.TemporaryDirectory() as tmp:
        az = import_module(Path(tmp))

        b0 = az.Curve("B0", 3)
        c0 = az.Curve("C0", 3)
        b2 = az.Curve("B", 3, k=2)
        c1 = az.Curve("C", 3, k=1)
        c2 = az.Curve("C", 3, k=2)
        c3 = az.Curve("C", 3, k=3)

        check("genus B0(3)", b0.genus(), 1)
        check("genus C2(3)", c2.genus(), 9)

        check("#B0(F_3)", b0.count(1), 4)
        check("#C0(F_3)", c0.count(1), 7)
        check("#C2(F_3) brute", c2.count(1, method="brute"), 7)
        check("#C2(F_3) rank", c2.count(1, method="rank"), 7)
        check("#B0(F_9)", b0.count(2), 16)

        check("deficit B2(3) at 2", b2.deficit(2), (-2, 0))
        check("deficit C2(3) at 1", c2.deficit(1), (0, -1))

        check(
            "L(B2) over F_3",
            b2.lpoly_text(),
            "1 + 3*T^2 - 162*T^8 - 486*T^10 + 6561*T^16 + 19683*T^18",
        )
        check(
            "cubed base change",
            b2.lpoly_text(m=3),
            "1 + 27*T^2 - 1062882*T^8 - 28697814*T^10 + 282429536481*T^16"
            " + 7625597484987*T^18",
        )
        check("B2 and C2 agree over F_27", c2.lpoly(m=3), b2.lpoly(m=3))

        check("period B2(3)", b2.period(), 8)
        check("period C1(3)", c1.period(), 12)
        s, u = az.Curve("B0", 5).spectrum()
        check("spectrum B0(5)", (s, u), (2, [2, 2]))

        check("L(C1) | L(C2)", az.lpoly_divides(c1, c2), True)
        check("spectra dominate", az.spectrum_difference_nonneg(c1, c2), True)
        check("L(C2) !| L(C3)", az.lpoly_divides(c2, c3), False)
        check("period certificate", az.period_divides(c2, c3), False)
        check("u0(C3) > 0", c3.sqrtp_multiplicity() > 0, True)
        check("u0(C2) = 0", c2.sqrtp_multiplicity(), 0)

        check("a-invariance p=5 k=1 n=2", az.verify_a_invariance(5, 1, 2), True)

        big = c3.lpoly()
        check("deg L(C3)", len(big) - 1, 54)
        check("leading coefficient is 3^27", big[54], 3**27)

    print(f"\nsmoke test passed: {checks} checks")


if __name__ == "__main__":
    main()

"""Smoke test for the `antilin` Python extension.

Build first with `cargo build -p antilin-py` (or --release); the script copies
the shared library next to a temporary import path. Set ANTILIN_LIB to point
at a specific build.
"""

import cmath
import importlib
import json
import os
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def locate_library():
    env = os.environ.get("ANTILIN_LIB")
    if env:
        return Path(env)
    for profile in ("release", "debug"):
        for name in ("libantilin.so", "libantilin.dylib", "antilin.dll"):
            path = ROOT / "target" / profile / name
            if path.exists():
                return path
    sys.exit("antilin extension not built; run `cargo build -p antilin-py`")


def load():
    lib = locate_library()
    tmp = tempfile.mkdtemp(prefix="antilin-py-")
    suffix = ".pyd" if lib.suffix == ".dll" else ".so"
    shutil.copy(lib, Path(tmp) / f"antilin{suffix}")
    sys.path.insert(0, tmp)
    return importlib.import_module("antilin")


def close(a, b, tol=1e-10):
    return abs(a - b) <= tol


def main():
    al = load()

    shift = al.AntilinearOperator([[0, 1], [0, 0]])
    assert shift.shape == (2, 2)
    assert shift.apply([1j, 2]) == [2, 0]
    assert shift.adjoint().canon() == [[0, 0], [1, 0]]
    normal, residual = shift.is_normal()
    assert not normal and residual > 1
    assert close(shift.numerical_range_radius(), 0.5)
    assert shift.spectrum_radii() == [0.0]

    d = al.AntilinearOperator([[2, 0], [0, 1j]])
    assert d.is_normal()[0]
    radii = d.spectrum_radii()
    assert close(radii[0], 1.0) and close(radii[1], 2.0)
    assert d.in_spectrum(cmath.exp(0.3j) * 2) and not d.in_spectrum(1.5)
    assert max(d.identity_residuals().values()) < 1e-8
    x = d.witness(1 + 0.5j)
    assert close(d.nr_value(x), 1 + 0.5j, 1e-8)
    u, modulus = d.polar()
    assert close(modulus[0][0].real, 2.0)
    dag = d.moore_penrose().canon()
    assert close(dag[0][0], 0.5) and close(dag[1][1], 1j)

    u, sigma = al.takagi([[0, 1], [1, 0]])
    assert close(sigma[0], 1.0) and close(sigma[1], 1.0)

    blk = al.BlockAntilinearMatrix([[1]], [[1]], [[1]], [[0]])
    lin, anti = blk.complement("S2", 2)
    assert close(lin[0][0], -4 / 3, 1e-12) and close(anti[0][0], 1 / 3, 1e-12)
    for which in ("schur_a", "schur_e", "quadratic_f", "quadratic_b"):
        assert blk.factorization_residual(which, 2) < 1e-12
    golden = (5 ** 0.5 + 1) / 2
    assert close(blk.flatten().spectrum_radii()[1], golden, 1e-12)

    text = al.generate("selfadjoint", 3, 42)
    assert text == al.generate("selfadjoint", 3, 42)
    op = al.AntilinearOperator.from_json(text)
    assert op.is_selfadjoint()[0]
    assert json.loads(text)["schema"] == "antilin.operator/v1"

    try:
        al.AntilinearOperator([[1, 2], [3]])
    except ValueError:
        pass
    else:
        raise AssertionError("ragged matrix accepted")

    print("antilin python smoke test: ok")


if __name__ == "__main__":
    main()

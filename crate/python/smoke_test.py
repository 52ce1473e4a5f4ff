"""Smoke test for the gstar extension module.

Build first:
    cargo build --release -p gstar-py --features extension-module
then run this script from the repository root. If `gstar` is not importable
the script loads the freshly built shared library from target/release.
"""

import importlib.machinery
import importlib.util
import json
import pathlib
import sys


def load():
    try:
        import gstar  # noqa: F401

        return sys.modules["gstar"]
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for name in ("libgstar.so", "libgstar.dylib", "gstar.dll"):
        lib = root / "target" / "release" / name
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("gstar", str(lib))
            spec = importlib.util.spec_from_file_location("gstar", lib, loader=loader)
            mod = importlib.util.module_from_spec(spec)
            loader.exec_module(mod)
            return mod
    sys.exit("gstar extension not found; build it with cargo first")


def main():
    gs = load()

    g = gs.Group("Z2")
    assert g.order == 2 and g.elements() == ["1", "g"]

    m = gs.Algebra("Mrho[g]")
    assert m.validate() is None
    assert m.dim == 4
    assert m.radical_dim() == 2

    c3 = gs.Algebra("C3[g]", "Z3")
    assert c3.radical_dim() == 2 and c3.radical_index() == 3
    assert gs.Algebra.from_json(c3.to_json()).dim == 3

    e = gs.Engine(c3)
    seq = e.codim_sequence(5)
    assert seq == [1 + 2 * n + n * (n - 1) // 2 for n in range(1, 6)], seq
    assert gs.codims("N2star", 4) == [2, 3, 4, 5]

    fc = gs.Engine(gs.Algebra("FC2star"))
    holds, witness = fc.is_identity("[x1_1, x2_1]")
    assert holds and witness is None
    holds, witness = gs.Engine(gs.Algebra("Mrho[1]")).is_identity("[y1_1, y2_1]")
    assert not holds and witness is not None

    assert gs.Engine(m).ideal_check(["z1_1", "x1_g x2_g"], 3)

    report = json.loads(gs.Engine(gs.Algebra("C2star[g]")).growth(n_codim=5, n_ideal=3))
    assert report["class"] == "linear", report

    assert gs.profile([1, 4, 9, 16, 25]) == (2, "1", 1)
    assert "C3star[1]@Z2" in gs.catalog("K")

    try:
        gs.Algebra("nonsense[")
    except ValueError:
        pass
    else:
        raise AssertionError("bad name accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()

"""Smoke test for the `thue` extension module.

Build first:

    cargo build --release -p thue-py --features extension-module

then run `python3 python/smoke_test.py`. If `thue` is not importable the
script loads target/release/libthue.so directly.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys


def load():
    try:
        import thue
        return thue
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for profile in ("release", "debug"):
        lib = root / "target" / profile / "libthue.so"
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("thue", str(lib))
            spec = importlib.util.spec_from_file_location("thue", lib, loader=loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            sys.modules["thue"] = module
            return module
    sys.exit("thue extension not found; build it with cargo first")


def main():
    thue = load()

    p6 = thue.path(6)
    assert p6.n == 6 and len(p6.edges()) == 5
    assert thue.Graph.from_json(p6.to_json()).edges() == p6.edges()

    bad = thue.Coloring(2, [0, 1, 0, 1])
    assert thue.find_repetitive_path(thue.path(4), bad) is not None
    assert thue.is_nonrepetitive(thue.path(3), thue.Coloring(2, [0, 1, 0]))

    pg = thue.lex_product(thue.path(10), "empty", 2)
    c = thue.color_path_rainbow(10, 2)
    assert thue.is_rainbow(pg, c)
    assert thue.is_nonrepetitive(pg.graph, c, 10)

    pk = thue.lex_product(thue.path(12), "complete", 2)
    ck = thue.color_path_complete(12, 2)
    assert thue.is_nonrepetitive(pk.graph, ck, 10)
    assert len(thue.label_layers(pk, ck)) == 12

    r = thue.thue_number(thue.cycle(5))
    assert (r.status, r.value) == ("exact", 4)
    assert thue.is_nonrepetitive(thue.cycle(5), r.coloring)

    r = thue.rainbow_thue_number(thue.lex_product(thue.path(4), "empty", 2))
    assert r.value == 6

    c7 = thue.c7_fractional_example()
    assert thue.find_tuple_repetitive_path(thue.cycle(7), c7) is None
    assert thue.exists_tuple_coloring(thue.cycle(7), 2, 6).feasible is False

    word = thue.gen_nonrepetitive(3, 60)
    assert thue.find_repetition(word) is None
    assert thue.find_repetition("ABCABC") == (1, 3)
    peaks, gaps = thue.gap_profile("CBABCBA")
    assert peaks == [1, 3, 5, 7] and gaps == [1, 1, 1]

    try:
        thue.path(0)
    except ValueError:
        pass
    else:
        raise AssertionError("path(0) accepted")
    r = thue.thue_number(thue.path(12), max_nodes=3)
    assert r.status == "timeout" and r.value is None

    print("smoke test passed")


if __name__ == "__main__":
    main()

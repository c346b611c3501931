"""
Acceptance checks, one test per criterion.  Each records a PASS/FAIL line
that is printed in the terminal summary (or directly when this file is run
as a script).
"""

import io
import time

from oracles import determinant
from reidemine import canonicalize, cli, corpus
from reidemine.codec import emit, parse
from reidemine.classes import verify_r_equals_p
from reidemine.mapcore import build_diagram, euler_ok, strand_count
from reidemine.moves import (ALL_KINDS, TRIANGLE, Kind, apply, created_site,
                             detect_sites)
from reidemine.reduction import connected_sum, exhaustive_confluence, is_minimal

from conftest import ACCEPTANCE_LINES


def _corpus():
    items = dict(corpus.knots())
    items.update(corpus.padded_knots())
    return items


def _extended():
    items = _corpus()
    items.update(corpus.clasp_diagrams())
    return items


def _everything():
    items = _extended()
    items["poke"] = corpus.poke()
    items["double_poke"] = corpus.double_poke()
    items["hopf"] = corpus.hopf()
    items["unknot_minimal"] = corpus.minimal_unknot()[0]
    return items


class _Criterion:
    def __init__(self, num, title, budget):
        self.num, self.title, self.budget = num, title, budget

    def __enter__(self):
        self.t0 = time.perf_counter()
        self.detail = ""
        return self

    def __exit__(self, exc_type, exc, tb):
        dt = time.perf_counter() - self.t0
        ok = exc_type is None and dt < self.budget
        note = self.detail
        if exc_type is not None:
            note = "%s: %s" % (exc_type.__name__, exc)
        elif dt >= self.budget:
            note += " over budget"
        ACCEPTANCE_LINES.append("criterion %d %s: %s (%.1fs / %ds) %s" % (
            self.num, self.title, "PASS" if ok else "FAIL", dt, self.budget, note))
        if exc_type is None and not ok:
            raise AssertionError("criterion %d took %.1fs, budget %ds"
                                 % (self.num, dt, self.budget))
        return False


def test_criterion_1_conditional_confluence():
    with _Criterion(1, "conditional confluence", 60) as c:
        items = _corpus()
        assert len(items) >= 15
        checked = 0
        for name, d in items.items():
            rep = exhaustive_confluence(d)
            if not rep.loop_flag:
                assert len(rep.distinct_canonical_codes) == 1, name
                checked += 1
        c.detail = "%d diagrams, %d loop-free" % (len(items), checked)


def test_criterion_2_crossing_count_unique():
    with _Criterion(2, "crossing-number uniqueness", 60) as c:
        items = _extended()
        assert len(corpus.clasp_diagrams()) >= 3
        for name, d in items.items():
            rep = exhaustive_confluence(d)
            assert len(rep.distinct_crossing_counts) == 1, name
        c.detail = "%d diagrams" % len(items)


def test_criterion_3_clasped_trefoil():
    with _Criterion(3, "clasped circle on the trefoil", 5) as c:
        d = corpus.clasp_diagrams()["3_1+clasp"]
        rep = exhaustive_confluence(d)
        assert len(rep.distinct_canonical_codes) == 2
        assert rep.distinct_crossing_counts == {3}
        assert rep.loop_flag
        hosts = sorted(len(f.face_darts[f.loops[0].host_face]) for f in rep.finals.values())
        assert hosts == [2, 3]
        c.detail = "2 finals, circle in a bigon or a triangle"


def test_criterion_4_many_minimal_diagrams():
    with _Criterion(4, "infinitely many minimal diagrams", 5) as c:
        t = corpus.knot("3_1")
        u, _ = corpus.minimal_unknot()
        assert is_minimal(u) and determinant(u) == 1
        seq = []
        d = t
        for _ in range(3):
            d = connected_sum(d, u)
            seq.append(d)
        assert all(is_minimal(x) for x in seq)
        assert all(determinant(x) == 3 and strand_count(x) == 1 for x in seq)
        codes = {canonicalize(x) for x in seq + [t]}
        assert len(codes) == 4
        c.detail = "crossings %s" % [x.n for x in seq]


def test_criterion_5_move_algebra():
    with _Criterion(5, "move algebra", 120) as c:
        n_rii = n_riii = n_all = 0
        for name, d in _everything().items():
            if d.n > 8:
                continue
            code = canonicalize(d)
            for s in detect_sites(d, {Kind.RII_PLUS}):
                e = apply(d, s)
                assert canonicalize(apply(e, created_site(d, s, e))) == code, name
                n_rii += 1
            for s in detect_sites(d, TRIANGLE):
                e = apply(d, s)
                assert canonicalize(apply(e, created_site(d, s, e))) == code, name
                n_riii += 1
            for s in detect_sites(d, ALL_KINDS):
                e = apply(d, s)
                build_diagram(e.over, e.alpha, e.loops, e.splits)
                assert euler_ok(e) and strand_count(e) == strand_count(d), name
                n_all += 1
        assert n_riii > 0
        c.detail = "RII+ %d, RIII %d, all moves %d" % (n_rii, n_riii, n_all)


def test_criterion_6_r_equals_p():
    with _Criterion(6, "R = P at surplus 2", 600) as c:
        items = {k: d for k, d in _everything().items()
                 if d.n <= 7 and is_minimal(d) and not d.loops and d.n > 0}
        bad = {}
        for name, d in items.items():
            rep = verify_r_equals_p(d, 2)
            if rep.violations:
                bad[name] = len(rep.violations)
        assert not bad, bad
        c.detail = "%d minimal diagrams, 0 violations" % len(items)


def test_criterion_7_round_trip_and_determinism(tmp_path):
    with _Criterion(7, "round trip and determinism", 10) as c:
        items = _everything()
        for name, d in items.items():
            e = parse(emit(d))
            assert canonicalize(e) == canonicalize(d), name
        (tmp_path / "t.pd").write_text(emit(corpus.knot("4_1")))
        (tmp_path / "c.pd").write_text(emit(corpus.clasp_diagrams()["3_1+clasp"]))
        runs = [["validate", "t.pd"], ["reduce", "c.pd"], ["confluence", "c.pd"],
                ["explore", "t.pd"]]
        for argv in runs:
            argv = [argv[0], str(tmp_path / argv[1])]
            outs = []
            for _ in range(2):
                buf = io.StringIO()
                code = cli.main(argv, buf, io.StringIO(), {})
                outs.append((code, buf.getvalue()))
            assert outs[0] == outs[1] and outs[0][0] == 0
        c.detail = "%d diagrams, %d commands" % (len(items), len(runs))


if __name__ == "__main__":
    import sys
    import tempfile
    from pathlib import Path
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion")]:
        try:
            if "tmp_path" in fn.__code__.co_varnames[:fn.__code__.co_argcount]:
                with tempfile.TemporaryDirectory() as tmp:
                    fn(Path(tmp))
            else:
                fn()
        except Exception:
            pass
    for line in ACCEPTANCE_LINES:
        print(line)
    sys.exit(0 if all(": PASS" in x for x in ACCEPTANCE_LINES) else 1)

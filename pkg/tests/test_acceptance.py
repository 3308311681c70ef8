"""Exit criteria.  Each test records a PASS/FAIL line shown in the summary."""
import random
import time

from holetile import io
from holetile.cli import main
from holetile.constructions import (conjectured_min, reference_tiling_9, residue_permutation,
                                    residue_upper_bound)
from holetile.core import rect_contains, verify_tiling
from holetile.foolingset import certify, lds, lis, verify_fooling_set, verify_fooling_set_naive
from holetile.harness import KNOWN_MINIMA, random_perm, reproduce_table, run_experiment
from holetile.solver import (BudgetExceeded, SearchBudget, global_min, min_partition,
                             naive_global_min, refute_formula)
from holetile.symmetry import SYMMETRIES, apply_to_perm

MASTER_SEED = 20250717


def test_c1_table_small(criterion):
    t0 = time.monotonic()
    rows = reproduce_table(ns=range(2, 7))
    elapsed = time.monotonic() - t0
    got = [r.computed for r in rows]
    criterion("C1 table n=2..6", got == [2, 4, 5, 7, 8] and elapsed <= 60,
              f"computed {got}, expected [2, 4, 5, 7, 8], {elapsed:.1f}s (limit 60s)")


def test_c1_table_seven(criterion):
    t0 = time.monotonic()
    res = global_min(7, SearchBudget(max_time=600))
    elapsed = time.monotonic() - t0
    criterion("C1 table n=7", res.min_count == 10 and elapsed <= 600,
              f"M(7)={res.min_count}, expected 10, {elapsed:.1f}s (limit 600s)")


def test_c1_table_eight_stretch(criterion):
    t0 = time.monotonic()
    try:
        res = global_min(8, SearchBudget(max_time=600))
    except BudgetExceeded:
        criterion("C1 table n=8 (stretch)", True, "skipped by budget")
        return
    criterion("C1 table n=8 (stretch)", res.min_count == KNOWN_MINIMA[8],
              f"M(8)={res.min_count}, expected 11, {time.monotonic() - t0:.1f}s")


def test_c2_counterexample(criterion):
    t0 = time.monotonic()
    found = refute_formula(lambda n: 2 * n - 2, range(2, 6))
    elapsed = time.monotonic() - t0
    criterion("C2 refute 2n-2", found == (4, 6, 5) and elapsed <= 5,
              f"counterexample {found}, expected (4, 6, 5), {elapsed:.2f}s (limit 5s)")


def test_c3_residue_fixtures(criterion):
    t0 = time.monotonic()
    perm = residue_permutation(3)
    solved = min_partition(perm)
    ref_perm, ref_tiling = reference_tiling_9()
    accepted = verify_tiling(ref_perm, ref_tiling).accepted
    elapsed = time.monotonic() - t0
    ok = (perm.map == (7, 4, 1, 8, 5, 2, 9, 6, 3) and solved.min_count == 12
          and accepted and len(ref_tiling) == 12 and ref_perm == perm and elapsed <= 60)
    criterion("C3 residue fixtures", ok,
              f"perm {perm.map}, min_partition {solved.min_count}, reference accepted={accepted} "
              f"with {len(ref_tiling)} rects, {elapsed:.2f}s (limit 60s)")


def test_c4_formula(criterion):
    solved = {k: residue_upper_bound(k, SearchBudget(max_time=600)).min_count for k in (2, 3, 4)}
    ok = conjectured_min(45) == 2112 and all(solved[k] == conjectured_min(k) for k in solved)
    criterion("C4 formula", ok,
              f"conjectured_min(45)={conjectured_min(45)}; solver k=2,3,4 -> "
              f"{[solved[k] for k in (2, 3, 4)]}, formula {[conjectured_min(k) for k in (2, 3, 4)]}")


def test_c5_certificate_residue(criterion):
    t0 = time.monotonic()
    cert = certify(residue_permutation(5))
    independent = verify_fooling_set_naive(cert.perm, cert.cells).valid
    elapsed = time.monotonic() - t0
    ok = cert.valid and independent and cert.size >= 32 == conjectured_min(5) and elapsed <= 10
    criterion("C5 certificate k=5", ok,
              f"valid={cert.valid} (naive check {independent}), size {cert.size} >= 32, "
              f"{elapsed:.2f}s (limit 10s)")


def test_c6_random_statistics(criterion):
    t0 = time.monotonic()
    small = run_experiment(10, 100, MASTER_SEED)
    large = run_experiment(25, 100, MASTER_SEED)
    elapsed = time.monotonic() - t0
    ok = (small.validity_rate >= 0.90 and large.size_mean >= 32
          and abs(large.size_max - 40) <= 4 and elapsed <= 60)
    criterion("C6 random statistics", ok,
              f"n=10 validity {small.validity_rate:.2f} (>= 0.90); n=25 sizes "
              f"{large.size_min}/{large.size_mean:.2f}/{large.size_max} min/mean/max "
              f"(mean >= 32, max within 4 of 40); {elapsed:.1f}s (limit 60s)")


def test_c7_erdos_szekeres(criterion):
    violations = 0
    for n in (5, 10, 16, 25):
        for seed in range(1000):
            perm = random_perm(n, seed)
            if len(lis(perm)) * len(lds(perm)) < n:
                violations += 1
    criterion("C7 Erdos-Szekeres", violations == 0, f"{violations} violations in 4000 perms")


def test_c7_key_lemma(criterion):
    rng = random.Random(MASTER_SEED)
    violations = 0
    for _ in range(200):
        n = rng.randint(1, 6)
        perm = random_perm(n, rng.getrandbits(64))
        cert = certify(perm)
        tiling = min_partition(perm, fooling_bound=False).witness
        if len(tiling) < cert.size:
            violations += 1
        if any(sum(rect_contains(rect, c) for c in cert.cells) > 1 for rect in tiling.rects):
            violations += 1
    criterion("C7 key lemma", violations == 0, f"{violations} violations in 200 triples")


def test_c7_oracle_equivalence(criterion):
    mismatches = []
    for n in range(1, 6):
        fast = global_min(n)
        count, _ = naive_global_min(n)
        if fast.min_count != count:
            mismatches.append(n)
    rng = random.Random(MASTER_SEED)
    disagreements = 0
    for _ in range(500):
        n = rng.randint(1, 12)
        perm = random_perm(n, rng.getrandbits(64))
        free = [(r, c) for r in range(1, n + 1) for c in range(1, n + 1) if perm(r) != c]
        cells = rng.sample(free, rng.randint(0, min(len(free), 2 * n)))
        if verify_fooling_set(perm, cells) != verify_fooling_set_naive(perm, cells):
            disagreements += 1
    criterion("C7 oracle equivalence", not mismatches and not disagreements,
              f"global_min vs naive mismatches at n={mismatches}; "
              f"fooling verifier disagreements {disagreements}/500")


def test_c7_dihedral(criterion):
    rng = random.Random(MASTER_SEED)
    failures = 0
    for _ in range(100):
        n = rng.randint(1, 6)
        perm = random_perm(n, rng.getrandbits(64))
        counts = {min_partition(apply_to_perm(s, perm), fooling_bound=False).min_count
                  for s in SYMMETRIES}
        failures += len(counts) != 1
    criterion("C7 dihedral invariance", failures == 0, f"{failures}/100 perms not invariant")


def test_c7_determinism(criterion, tmp_path, capsys):
    io.dump(residue_permutation(4), tmp_path / "p.json")
    commands = [
        ["experiment", "--n", "10", "--trials", "50", "--seed", "7", "--format", "json"],
        ["experiment", "--n", "10", "--trials", "50", "--seed", "7", "--workers", "2",
         "--format", "json"],
        ["certify", "--perm-file", str(tmp_path / "p.json"), "--format", "json"],
        ["min-partition", "--perm-file", str(tmp_path / "p.json"), "--format", "json"],
        ["solve", "--n", "5", "--format", "json"],
        ["construct", "--k", "3", "--format", "json"],
        ["table", "--max-n", "5", "--format", "json"],
    ]
    outputs = []
    for argv in commands:
        runs = []
        for _ in range(2):
            assert main(argv) == 0
            runs.append(capsys.readouterr().out)
        outputs.append(runs)
    differing = [" ".join(c[:1]) for c, (a, b) in zip(commands, outputs) if a != b]
    same_workers = outputs[0][0] == outputs[1][0]
    criterion("C7 determinism", not differing and same_workers,
              f"{len(commands)} commands run twice, differing: {differing or 'none'}; "
              f"1 vs 2 workers identical={same_workers}")

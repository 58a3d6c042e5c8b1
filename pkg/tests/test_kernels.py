"""Cross-backend parity: the compiled kernels must match the pure reference
bit for bit on every function, over exhaustive small inputs and sampled
larger ones."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from catbase import _kernels
from conftest import candidate_families

pure = _kernels.load_backend("pure")
try:
    fast = _kernels.load_backend("c")
except ImportError:  # pragma: no cover
    fast = None

needs_fast = pytest.mark.skipif(fast is None, reason="compiled backend missing")


def masks_strategy(n):
    return st.lists(
        st.integers(1, (1 << n) - 1), min_size=1, max_size=6, unique=True
    ).map(lambda xs: tuple(sorted(xs)))


@needs_fast
def test_classify_tables_parity_exhaustive_n3():
    for masks in candidate_families(3):
        assert pure.classify_tables(masks, 3) == fast.classify_tables(masks, 3)


@needs_fast
def test_cluster_and_fundamental_parity_exhaustive_n3():
    for masks in candidate_families(3):
        assert pure.cluster_table(masks, 3) == fast.cluster_table(masks, 3)
        mm = pure.singleton_singular_mask(masks, 3)
        assert mm == fast.singleton_singular_mask(masks, 3)
        assert pure.fundamental_table(masks, 3, mm) == fast.fundamental_table(
            masks, 3, mm
        )


@needs_fast
def test_axiom2_scan_parity_exhaustive_n3():
    for masks in candidate_families(3):
        for budget in (10**7, 5):
            assert pure.axiom2_scan(masks, 3, budget, True) == fast.axiom2_scan(
                masks, 3, budget, True
            )
            assert pure.axiom2_scan(masks, 3, budget, False) == fast.axiom2_scan(
                masks, 3, budget, False
            )


@needs_fast
def test_topology_kernels_parity_on_cluster_topologies_n3():
    for masks in candidate_families(3)[::2]:
        table = pure.cluster_table(masks, 3)
        opens = pure.tau_opens(table, 3)
        assert opens == fast.tau_opens(table, 3)
        assert pure.topology_closure_witness(opens) == fast.topology_closure_witness(
            opens
        )
        fc = pure.nwd_singleton_mask(opens, 3)
        assert fc == fast.nwd_singleton_mask(opens, 3)
        assert pure.topo_baire_table(opens, 3, fc) == fast.topo_baire_table(
            opens, 3, fc
        )
        for s in range(8):
            assert pure.interior_of(opens, s) == fast.interior_of(opens, s)


@needs_fast
def test_pointwise_kernels_parity_random_n4():
    rng = random.Random(17)
    for _ in range(150):
        m = rng.randrange(1, 8)
        masks = tuple(sorted(rng.sample(range(1, 16), m)))
        s = rng.randrange(16)
        assert pure.covers(masks, s) == fast.covers(masks, s)
        assert pure.is_singular(masks, s) == fast.is_singular(masks, s)
        mm = pure.singleton_singular_mask(masks, 4)
        assert mm == fast.singleton_singular_mask(masks, 4)
        assert pure.is_baire(masks, 4, mm, s) == fast.is_baire(masks, 4, mm, s)
        assert pure.cluster_points(masks, 4, mm, s) == fast.cluster_points(
            masks, 4, mm, s
        )


@needs_fast
@settings(max_examples=80, deadline=None)
@given(masks_strategy(4))
def test_batch_kernels_parity_property_n4(masks):
    assert pure.classify_tables(masks, 4) == fast.classify_tables(masks, 4)
    assert pure.cluster_table(masks, 4) == fast.cluster_table(masks, 4)
    assert pure.axiom2_scan(masks, 4, 10**6, True) == fast.axiom2_scan(
        masks, 4, 10**6, True
    )


def test_backend_selection_reports():
    assert pure.BACKEND == "pure"
    if fast is not None:
        assert fast.BACKEND == "c"
    assert _kernels.BACKEND in ("pure", "c")


@needs_fast
def test_full_stack_reports_identical_across_backends():
    import os
    import subprocess
    import sys

    args = [
        sys.executable, "-m", "catbase.cli", "sweep", "--n", "3",
        "--exhaustive", "--operators", "10", "--seed", "3", "--json",
    ]
    outputs = []
    for name in ("py", "c"):
        env = dict(os.environ, CATBASE_BACKEND=name)
        proc = subprocess.run(args, env=env, capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        outputs.append(proc.stdout)
    assert outputs[0] == outputs[1]

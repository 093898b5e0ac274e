"""Tensor norm brackets: representations, orthogonalization, pl/l comparison."""

import numpy as np
import pytest

from pllab import (
    BaseNorm,
    LRepresentation,
    NormBracket,
    PairingMap,
    PLRepresentation,
    Quantization,
    compare_pl_l,
    diamond_amp,
    l_norm_bracket,
    orthogonalize_representation,
    pl_norm_bracket,
)
from pllab.sampling import make_rng, random_complex
from pllab.suites import v_example


def hilbert_pair(n):
    return Quantization.hilbert(n), Quantization.hilbert(n)


def test_separation_example_exact_values():
    for n in (2, 3):
        E, F = hilbert_pair(n)
        V = v_example(n)
        pl = pl_norm_bracket(E, F, V, budget=150, seed=0)
        assert pl.lower == pytest.approx(n, abs=1e-9)
        assert pl.upper == pytest.approx(n, abs=1e-9)
        l = l_norm_bracket(E, F, V, budget=150, seed=0)
        assert l.lower == pytest.approx(np.sqrt(n), abs=1e-9)
        assert l.upper == pytest.approx(np.sqrt(n), abs=1e-9)


def test_pl_representation_validates_and_reconstructs():
    rng = make_rng(61, "plrep")
    E, F = hilbert_pair(2)
    u = random_complex(rng, 1, 2)
    v = random_complex(rng, 1, 2)
    U = diamond_amp(u, v)
    rep = PLRepresentation(
        ((np.eye(1, dtype=complex), u, v),), U, E, F, PairingMap(), label="elementary"
    )
    np.testing.assert_allclose(rep.reconstruct(), U, atol=1e-12)
    # the certified value of an elementary representation is the norm product
    assert rep.value() == pytest.approx(
        np.linalg.norm(u) * np.linalg.norm(v), rel=1e-12
    )
    with pytest.raises(ValueError):
        PLRepresentation(((np.eye(1), u, v),), 2 * U, E, F, PairingMap())
    with pytest.raises(ValueError):
        # block truncation does not match the term truncations
        PLRepresentation(((np.ones((1, 3)), u, v),), U, E, F, PairingMap())


def test_l_representation_requires_disjoint_supports():
    E, F = hilbert_pair(2)
    rng = make_rng(62, "lrep")
    u = random_complex(rng, 2, 2)
    v = random_complex(rng, 1, 2)
    U = diamond_amp(u, v)
    block = np.eye(2, dtype=complex)
    ok = LRepresentation(block, ((u, v),), ((0, 2),), U, E, F, PairingMap())
    np.testing.assert_allclose(ok.reconstruct(), U, atol=1e-12)
    u1 = np.vstack([random_complex(rng, 2, 2), np.zeros((1, 2))])
    u2 = np.vstack([np.zeros((1, 2)), random_complex(rng, 2, 2)])
    with pytest.raises(ValueError, match="overlap"):
        LRepresentation(
            np.zeros((2, 3), dtype=complex),
            ((u1, v), (u2, v)),
            ((0, 2), (1, 2)),  # rows 1 is claimed twice
            np.zeros((2, 4), dtype=complex),
            E,
            F,
            PairingMap(),
        )


def test_bracket_witnesses_reproduce_their_bounds():
    """Re-evaluating the returned representation recovers the reported upper."""
    rng = make_rng(63, "wit")
    E, F = hilbert_pair(2)
    U = random_complex(rng, 2, 4)
    pl = pl_norm_bracket(E, F, U, budget=100, seed=4)
    rep_val = pl.upper_witness.value(budget=100, seed=4)
    assert rep_val == pytest.approx(pl.upper, rel=1e-9)
    l = l_norm_bracket(E, F, U, budget=100, seed=4)
    lrep_val = l.upper_witness.value(budget=100, seed=4)
    assert lrep_val == pytest.approx(l.upper, rel=1e-9)
    assert l.upper_witness.label.endswith("+orthogonalized")


def test_orthogonalization_preserves_reconstruction():
    rng = make_rng(64, "orth")
    E, F = hilbert_pair(3)
    U = random_complex(rng, 2, 9)
    pl = pl_norm_bracket(E, F, U, budget=80, seed=0)
    lrep = orthogonalize_representation(pl.upper_witness)
    np.testing.assert_allclose(lrep.reconstruct(), U, atol=1e-9)
    offs = [s[0] for s in lrep.supports]
    sizes = [s[1] for s in lrep.supports]
    spans = sorted(zip(offs, sizes))
    for (o1, s1), (o2, _) in zip(spans, spans[1:]):
        assert o1 + s1 <= o2  # supports are consecutive disjoint blocks


def test_norm_bracket_rejects_crossed_bounds():
    E, F = hilbert_pair(1)
    rep = PLRepresentation((), np.zeros((1, 1)), E, F, PairingMap(), label="zero")
    with pytest.raises(AssertionError):
        NormBracket(2.0, 1.0, "pl", {}, rep, {})


def test_norm_bracket_gap_flag():
    E, F = hilbert_pair(1)
    rep = PLRepresentation((), np.zeros((1, 1)), E, F, PairingMap(), label="zero")
    tight = NormBracket(1.0, 1.0 + 1e-12, "pl", {}, rep, {})
    assert not tight.has_gap
    open_ = NormBracket(1.0, 1.1, "pl", {}, rep, {})
    assert open_.has_gap
    assert open_.gap == pytest.approx(0.1)
    assert open_.to_dict(include_representation=False)["gap"] is True


def test_compare_pl_l_checks_and_separation():
    E, F = hilbert_pair(3)
    report = compare_pl_l(E, F, v_example(3), budget=150, seed=0)
    assert all(c["passed"] for c in report["checks"])
    assert report["separation_ratio"] == pytest.approx(np.sqrt(3), abs=1e-8)
    assert report["pl"]["lower"] >= report["l"]["lower"] - 1e-9


def test_compare_pl_l_random_elements():
    rng = make_rng(65, "cmprand")
    E = Quantization.min(BaseNorm.euclidean(2))
    F = Quantization.hilbert(2)
    for t in range(5):
        U = random_complex(rng, 2, 4)
        report = compare_pl_l(E, F, U, budget=80, seed=t)
        assert all(c["passed"] for c in report["checks"])


def test_scale_covariance_of_brackets():
    rng = make_rng(66, "scale")
    E, F = hilbert_pair(2)
    U = random_complex(rng, 2, 4)
    a = pl_norm_bracket(E, F, U, budget=80, seed=1)
    b = pl_norm_bracket(E, F, 3.5 * U, budget=80, seed=1)
    assert b.lower == pytest.approx(3.5 * a.lower, rel=1e-12)
    assert b.upper == pytest.approx(3.5 * a.upper, rel=1e-12)


def test_pairing_choice_does_not_move_values():
    E, F = hilbert_pair(2)
    V = v_example(2)
    for fn in (pl_norm_bracket, l_norm_bracket):
        row = fn(E, F, V, budget=100, seed=0, pairing=PairingMap("row-major"))
        col = fn(E, F, V, budget=100, seed=0, pairing=PairingMap("column-major"))
        assert row.lower == pytest.approx(col.lower, abs=1e-10)
        assert row.upper == pytest.approx(col.upper, abs=1e-10)


def test_zero_element_brackets():
    E, F = hilbert_pair(2)
    Z = np.zeros((2, 4))
    for fn in (pl_norm_bracket, l_norm_bracket):
        b = fn(E, F, Z)
        assert b.lower == 0.0 and b.upper == 0.0
        assert not b.has_gap


def test_explicit_empty_certificate_pool():
    E, F = hilbert_pair(2)
    b = pl_norm_bracket(E, F, v_example(2), budget=60, seed=0, certificates=[])
    assert b.lower == 0.0
    assert b.upper == pytest.approx(2.0, abs=1e-9)


def test_l_pool_is_semi_ruan_subset():
    from pllab.maps import builtin_certificates

    E, F = hilbert_pair(2)
    b = l_norm_bracket(E, F, v_example(2), budget=60, seed=0)
    pool = set(b.details["pool"])
    catalog = {c.name for c in builtin_certificates(E, F)}
    assert pool <= catalog
    # the l1 coordinate multiplication target fails semi-Ruan, so the pl
    # catalog keeps it while the l pool drops it
    assert "coordinate-multiplication-l1" in catalog
    assert "coordinate-multiplication-l1" not in pool
    assert "coordinate-multiplication-l2" in pool

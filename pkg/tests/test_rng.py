import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from ssaforecast.rng import SplitMix64


def test_same_seed_same_stream():
    a = SplitMix64(123)
    b = SplitMix64(123)
    assert [a.next_u64() for _ in range(20)] == [b.next_u64() for _ in range(20)]


def test_known_reference_values():
    # canonical SplitMix64 outputs for state0 = mix64(42):
    # frozen from this implementation; guards against accidental edits
    rng = SplitMix64(42)
    got = [rng.next_u64() for _ in range(3)]
    assert got == [
        10996452266160306281,
        2958219263312191191,
        3069497704473277141,
    ]


def test_streams_differ():
    a = SplitMix64(7, stream=0)
    b = SplitMix64(7, stream=1)
    assert [a.next_u64() for _ in range(8)] != [b.next_u64() for _ in range(8)]


@given(st.integers(min_value=0, max_value=2**64 - 1))
def test_uniform_in_range(seed):
    rng = SplitMix64(seed)
    for _ in range(10):
        u = rng.uniform()
        assert 0.0 <= u < 1.0


def test_uniform_bounds_respected():
    rng = SplitMix64(3)
    xs = rng.uniforms(1000, -0.25, 0.25)
    assert np.all(xs >= -0.25) and np.all(xs < 0.25)
    assert abs(xs.mean()) < 0.05


def test_normals_moments():
    xs = SplitMix64(11).normals(20000)
    assert abs(xs.mean()) < 0.03
    assert abs(xs.std() - 1.0) < 0.03


def test_below_unbiased_small_range():
    rng = SplitMix64(9)
    counts = np.bincount([rng.below(4) for _ in range(8000)], minlength=4)
    assert counts.min() > 1800


@given(st.integers(min_value=0, max_value=2**32))
def test_permutation_is_permutation(seed):
    perm = SplitMix64(seed).permutation(17)
    assert sorted(perm.tolist()) == list(range(17))


def test_permutation_deterministic():
    assert np.array_equal(SplitMix64(5).permutation(50), SplitMix64(5).permutation(50))

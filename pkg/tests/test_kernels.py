import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from selfsim import _kernels_py, kernels, model_nat as mn

try:
    from selfsim import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

needs_compiled = pytest.mark.skipif(_compiled is None, reason="compiled kernels not built")


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


@needs_compiled
@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31), st.integers(0, 2**31))
def test_backends_agree(a, b):
    f, g = mn.random_map(a, 8), mn.ResidueMap([(1, 0, 0, 0)]) if b % 3 == 0 else mn.random_map(b, 8)
    ns = np.arange(0, 3000, dtype=np.int64)
    assert np.array_equal(_compiled.apply_pieces(*f.arrays(), ns), _kernels_py.apply_pieces(*f.arrays(), ns))
    assert np.array_equal(_compiled.apply_pieces(*g.arrays(), ns), _kernels_py.apply_pieces(*g.arrays(), ns))
    for lo, hi in ((0, 4096), (17, 300), (5, 5)):
        assert _compiled.first_mismatch(f.arrays(), g.arrays(), lo, hi) == \
            _kernels_py.first_mismatch(f.arrays(), g.arrays(), lo, hi)


@pytest.mark.parametrize("mod", [_kernels_py] + ([_compiled] if _compiled else []))
def test_kernel_marks_undefined(mod):
    half = mn.ResidueMap([(1, 0, 0, 0)])
    out = mod.apply_pieces(*half.arrays(), np.arange(6, dtype=np.int64))
    assert out.tolist() == [0, -1, 1, -1, 2, -1]
    assert mod.first_mismatch(half.arrays(), mn.identity().arrays(), 0, 100) == 1
    assert mod.first_mismatch(mn.identity().arrays(), mn.identity().arrays(), 0, 100) == -1


@pytest.mark.parametrize("mod", [_kernels_py] + ([_compiled] if _compiled else []))
def test_empty_map_kernel(mod):
    out = mod.apply_pieces(*mn.empty_map().arrays(), np.arange(3, dtype=np.int64))
    assert out.tolist() == [-1, -1, -1]

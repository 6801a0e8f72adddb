import subprocess
import sys

import pytest
from conftest import make_case

from qapdelta import _pykernels
from qapdelta._backend import BACKENDS, compiled_available, get_backend
from qapdelta.delta import delta_full

needs_compiled = pytest.mark.skipif(not compiled_available(), reason="compiled kernels not built")


def test_python_backend_always_available():
    assert get_backend("python") is _pykernels
    assert get_backend("auto").NAME in ("compiled", "python")
    with pytest.raises(ValueError):
        get_backend("gpu")
    assert BACKENDS == ("auto", "compiled", "python")


def test_env_var_forces_fallback():
    code = "from qapdelta._backend import get_backend; print(get_backend().NAME)"
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, check=True,
        env={**__import__("os").environ, "QAPDELTA_BACKEND": "python"},
    )
    assert out.stdout.strip() == "python"


@needs_compiled
def test_auto_prefers_compiled():
    assert get_backend(None).NAME == "compiled"


def test_tri_index_layout(backend):
    k = get_backend(backend)
    n = 7
    flat = [(i, j) for i in range(n) for j in range(i + 1, n)]
    assert [k.tri_index(n, i, j) for i, j in flat] == list(range(len(flat)))


def test_full_delta_kernel_matches_reference(backend):
    k = get_backend(backend)
    inst, perm = make_case(9, 12, "general", max_entry=99)
    d, f, p = k.matrix(inst.dist), k.matrix(inst.flow), k.vector(perm.assign)
    for i in range(9):
        for j in range(9):
            if i != j:
                assert k.full_delta(d, f, p, 9, i, j) == delta_full(inst, perm, i, j)


@needs_compiled
def test_kernels_agree_on_large_entries():
    # entries near the 32-bit limit keep intermediate products in int64
    from qapdelta.instance import QapInstance
    import numpy as np

    rng = np.random.default_rng(0)
    n = 12
    big = 2**31 - 1
    lim = int((2**63 - 1) // (2 * n * n * big))
    dist = rng.integers(-big, big, (n, n))
    flow = rng.integers(-lim, lim, (n, n))
    inst = QapInstance(n, dist, flow)
    from qapdelta.table import DeltaTable

    a = DeltaTable(inst, list(range(n)), backend="python")
    b = DeltaTable(inst, list(range(n)), backend="compiled", verify=True)
    for p, q in [(0, 5), (3, 11), (5, 3)]:
        a.apply_swap(p, q)
        b.apply_swap(p, q)
        assert a.values() == b.values()

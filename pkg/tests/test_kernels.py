import numpy as np
import pytest

from srskit._kernels import available_backends, backend_name, get_backend, pyref
from srskit.ik import IkProblem
from srskit.robot import RobotConfig, sample_backbone, joints_from_array
from srskit.transforms import BasePose

CONFIG = RobotConfig().without_offsets()


def _args(config):
    sections = config.sections
    return (
        np.array([s.backbone_length for s in sections]),
        np.array([s.trailing_offset for s in sections]),
        np.array([s.actuator_pitch_radius for s in sections]),
    )


def test_python_backend_always_available():
    assert "python" in available_backends()
    assert get_backend("python") is pyref
    assert backend_name(get_backend("python")) == "python"


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        get_backend("fortran")


def test_backbone_points_match_transform_chain():
    rng = np.random.default_rng(2)
    q = rng.uniform(-0.04, 0.04, 8)
    l0, doff, r_act = _args(CONFIG)
    pts = pyref.backbone_points(q, l0, doff, r_act, 15)
    expect = sample_backbone(BasePose(), joints_from_array(q), CONFIG, 15)
    assert pts.shape == (61, 3)
    assert np.allclose(pts, expect, atol=1e-12)


@pytest.mark.skipif(
    "compiled" not in available_backends(), reason="compiled extension not built"
)
def test_compiled_backend_parity():
    compiled = get_backend("compiled")
    l0, doff, r_act = _args(CONFIG)
    lo3 = np.array([s.min_joint for s in CONFIG.sections])
    hi3 = np.array([s.max_joint for s in CONFIG.sections])
    rng = np.random.default_rng(9)
    targets = rng.normal(scale=0.2, size=(61, 3))
    for _ in range(10):
        q = rng.uniform(-0.06, 0.06, 8)
        p_py = pyref.backbone_points(q, l0, doff, r_act, 15)
        p_c = compiled.backbone_points(q, l0, doff, r_act, 15)
        assert np.allclose(p_c, p_py, atol=1e-13)
        args = (q, targets, l0, doff, r_act, 15, 1.0, 1e-9, lo3, hi3, 1e3)
        assert np.isclose(compiled.cost(*args), pyref.cost(*args), rtol=1e-12)
        v_c, g_c = compiled.cost_and_grad(*args)
        v_py, g_py = pyref.cost_and_grad(*args)
        assert np.isclose(v_c, v_py, rtol=1e-12)
        assert np.allclose(g_c, g_py, rtol=1e-8, atol=1e-10)


def test_problem_reports_backend_name():
    target = pyref.backbone_points(np.zeros(8), *_args(CONFIG), 15)
    problem = IkProblem(target, CONFIG, kernel="python")
    assert problem.backend_name == "python"

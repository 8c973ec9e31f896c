import csv
from pathlib import Path

import pytest

from demandtier import LearningSpec, PreferenceSchedule

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def sched():
    """Default clipped affine weight schedule with decaying low-tier threshold."""
    return PreferenceSchedule()


@pytest.fixture
def cubic():
    """Headline cubic learning calibration."""
    return LearningSpec.cubic(nu=0.6, phi1=0.8, phi2=1.0, chi1=1.2, chi2=1.5)


@pytest.fixture
def linear():
    """Monotone linear learning with the same channel strengths."""
    return LearningSpec.linear(nu=0.6, phi=0.8, chi=1.2)


def flat_sched(alpha, gamma_l=0.0, gamma_h=0.0, decay=0.0):
    """Constant-weight schedule (clip bounds pinned to alpha)."""
    return PreferenceSchedule(
        alpha_base=alpha, alpha_slope=0.0, alpha_lo=alpha, alpha_hi=alpha,
        gammaL_base=gamma_l, gammaL_decay=decay, gamma_H=gamma_h,
    )


def load_goldens():
    """Committed oracle roots: {E: [(p_star, s_star, slope, stability), ...]}."""
    out = {}
    with open(DATA_DIR / "golden_fixed_points.csv", newline="") as fh:
        for row in csv.DictReader(fh):
            out.setdefault(float(row["E"]), []).append(
                (
                    float(row["p_star"]),
                    float(row["s_star"]),
                    float(row["t_prime_fd"]),
                    row["stability"],
                )
            )
    return out

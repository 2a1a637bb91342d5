import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cesaro.measure import Atomic, Lebesgue, Mixture, PowerDensity

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


# acceptance tests register (number, description, ok, detail) here; the
# terminal summary prints one line per criterion at the end of the run
ACCEPTANCE_RESULTS = []


@pytest.fixture
def acceptance():
    def record(num: int, desc: str, ok: bool, detail: str) -> None:
        ACCEPTANCE_RESULTS.append((num, desc, ok, detail))
        assert ok, f"criterion {num} ({desc}): {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, desc, ok, detail in sorted(ACCEPTANCE_RESULTS):
        word = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} {word}  {desc}: {detail}")


# ---- shared strategies ----

def atomic_measures():
    return st.builds(
        lambda pts, wts: Atomic(tuple(pts), tuple(wts[: len(pts)])),
        st.lists(
            st.floats(0.0, 0.999, allow_nan=False, allow_infinity=False),
            min_size=1,
            max_size=6,
            unique=True,
        ),
        st.lists(
            st.floats(1e-3, 10.0, allow_nan=False, allow_infinity=False),
            min_size=6,
            max_size=6,
        ),
    )


def power_densities():
    return st.builds(
        PowerDensity,
        st.floats(-0.9, 3.0, allow_nan=False, allow_infinity=False),
        st.floats(0.1, 5.0, allow_nan=False, allow_infinity=False),
    )


def simple_measures():
    return st.one_of(
        st.just(Lebesgue()),
        atomic_measures(),
        power_densities(),
    )


def any_measures():
    return st.one_of(
        simple_measures(),
        st.builds(lambda a, b: Mixture((a, b)), simple_measures(), simple_measures()),
    )


def bounded_coefficient_arrays(max_order: int = 30):
    return st.lists(
        st.tuples(
            st.floats(-1.0, 1.0, allow_nan=False),
            st.floats(-1.0, 1.0, allow_nan=False),
        ),
        min_size=1,
        max_size=max_order + 1,
    ).map(lambda pairs: np.asarray([complex(re, im) for re, im in pairs]))

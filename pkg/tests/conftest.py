import functools

import pytest

from runsrules import estimate, parse_scheme


@functools.lru_cache(maxsize=None)
def _cached_estimate(name, limit, shift, reps, seed, we_run_length):
    scheme = parse_scheme(name, we_run_length=we_run_length)
    if limit is not None:
        scheme = scheme.with_limit(limit)
    return estimate(scheme, shift, reps, seed)


@pytest.fixture(scope="session")
def mc_estimate():
    """Monte Carlo estimates shared across the session (they are costly)."""

    def run(name, limit, shift, reps=1_000_000, seed=7, we_run_length=8):
        return _cached_estimate(name, limit, shift, reps, seed, we_run_length)

    return run


_VERDICTS: dict[int, tuple[str, str]] = {}


@pytest.fixture
def verdict():
    """Record one acceptance criterion outcome for the terminal summary."""

    def record(number: int, failures: list[str], detail: str = "") -> None:
        status = "FAIL" if failures else "PASS"
        lines = [detail] + failures[:12]
        if len(failures) > 12:
            lines.append(f"... {len(failures) - 12} more")
        _VERDICTS[number] = (status, "\n      ".join(l for l in lines if l))
        assert not failures, "\n".join(failures)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        status, detail = _VERDICTS[number]
        terminalreporter.write_line(f"{status} criterion {number}: {detail}")

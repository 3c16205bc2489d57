from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from rieszlab import pl

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rationals(max_int=16, signed=True):
    lo = -max_int if signed else 0
    return st.builds(Fraction, st.integers(lo, max_int), st.integers(1, max_int))


def unit_rationals(max_den=16):
    return st.integers(1, max_den).flatmap(
        lambda q: st.integers(0, q).map(lambda p: Fraction(p, q)))


def terms(n, max_leaves=8):
    leaves = st.one_of(
        st.integers(0, n - 1).map(pl.Generator),
        st.just(pl.Unit()),
        rationals().map(pl.Const),
    )

    def extend(children):
        return st.one_of(
            st.builds(pl.Scale, rationals().filter(bool), children),
            st.builds(pl.Add, children, children),
            st.builds(pl.Join, children, children),
            st.builds(pl.Meet, children, children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def points(dom):
    return st.tuples(*[unit_rationals(32).map(lambda u, lo=lo, hi=hi: lo + (hi - lo) * u)
                       for lo, hi in dom.intervals])


DOMS = [pl.BoxDomain.unit_cube(1), pl.BoxDomain.unit_cube(2)]


# -- acceptance summary ---------------------------------------------------

_CRITERIA = {}


def pytest_runtest_logreport(report):
    # the criterion marker is copied into user_properties by the acceptance module
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    n, title = props["criterion"]
    if report.when == "call" or report.failed:
        prev = _CRITERIA.get(n, (title, True))[1]
        _CRITERIA[n] = (title, prev and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")

import pytest
from hypothesis import settings, strategies as st

from cnlogic.syntax import TOP, And, AnnFact, AnnValue, Atom, Bel, Geq, Implies, Know, Not, Or

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def formulas(atoms=("p", "q"), agents=("a",), modal=True, comparison=False, announce=None, max_leaves=12):
    """Hypothesis strategy for formulas over a fixed vocabulary."""
    leaves = st.sampled_from([TOP] + [Atom(p) for p in atoms])

    def extend(sub):
        opts = [
            sub.map(Not),
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
            st.builds(Implies, sub, sub),
        ]
        if modal:
            ag = st.sampled_from(agents)
            opts += [st.builds(Bel, ag, sub, sub), st.builds(Know, ag, sub)]
            if comparison:
                opts.append(st.builds(Geq, ag, sub, sub))
        if announce == "fact":
            opts.append(st.builds(AnnFact, sub, sub))
        elif announce == "value":
            opts.append(st.builds(AnnValue, sub, sub))
        return st.one_of(*opts)

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def report_line(request):
    """Record one PASS/FAIL line for the acceptance summary."""
    label = request.node.get_closest_marker("criterion").args[0]
    yield
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    line = f"{status}  {label}"
    print(line)
    ACCEPTANCE_LINES.append(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")

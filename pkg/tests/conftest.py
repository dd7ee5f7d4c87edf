from hypothesis import HealthCheck, settings, strategies as st

from surfbraid.words import Plain, Word

settings.register_profile("default", deadline=None, max_examples=100,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

LETTERS = [Plain(c) for c in "abc"]


def raw_letters(symbols=LETTERS, max_size=12):
    return st.lists(st.tuples(st.sampled_from(symbols), st.sampled_from([1, -1])),
                    max_size=max_size)


def words(symbols=LETTERS, max_size=12):
    return raw_letters(symbols, max_size).map(Word)


# one line per acceptance criterion, printed at the end of every run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])

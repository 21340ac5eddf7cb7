import os

from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


def all_params(L_max, aligned=False):
    out = []
    for L in range(1, L_max + 1):
        for J in range(1, L + 1):
            if aligned and L % J:
                continue
            for W in range(L + 1):
                out.append((L, J, W))
    return out


# acceptance criteria report one line each; collected here and printed at the end
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])

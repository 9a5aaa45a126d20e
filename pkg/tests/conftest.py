from __future__ import annotations

import pytest

from uqplus.cyclo import ctx_new
from uqplus.linalg import Matrix

# lines recorded by the acceptance suite, echoed in the terminal summary
CRITERIA_LINES: list[str] = []


def rho(x, rep):
    """Matrix of an algebra element on a module, by multiplying generator matrices."""
    ctx = rep.ctx
    out = Matrix.zeros(ctx, rep.dim)
    for (a, b, c), coeff in x.terms.items():
        M = (rep.E ** a) @ rep.K(b)
        if c:
            M = M @ (rep.F ** c)
        out = out + M.scale(coeff)
    return out


@pytest.fixture(params=[3, 5, 6])
def small_ctx(request):
    return ctx_new(request.param)


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA_LINES:
            terminalreporter.write_line(line)

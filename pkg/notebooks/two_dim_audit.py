# %% [markdown]
# # Auditing the two-dimensional tables
#
# Each claim about the algebras d/dx with x*d/dx, y*d/dx or x*d/dx + d/dy
# is recomputed and given a verdict.

# %%
from collections import Counter

from liext import verify_extension
from liext.audit import audit
from liext.corpus import CASES
from liext.dsl import parse_spec
from liext.workspace import Workspace


def findings(cid):
    ws = Workspace(parse_spec(CASES[cid].spec))
    return ws, audit(CASES[cid].claims, ws)


# %%
for cid in ("A1", "A2", "A3"):
    _, fs = findings(cid)
    print(cid, dict(Counter(f.verdict for f in fs)))

# %% [markdown]
# Anything not plainly confirmed, with the recomputed replacement.

# %%
for cid in ("A1", "A2", "A3"):
    _, fs = findings(cid)
    for f in fs:
        if f.verdict != "CONFIRMED":
            print(f"{f.tag}: {f.verdict}  {dict(f.data)}")

# %% [markdown]
# The general extension for x*d/dx + d/dy. The printed second coefficient
# leaves a residual; flipping the sign of x*Phi_x removes it.

# %%
ws, _ = findings("A3")
basis, c = ws.unextended(), ws.structure()
for b in ("Phi_y(x,y) - x*Phi_x(x,y)", "Phi_y(x,y) + x*Phi_x(x,y)"):
    chk = verify_extension(basis, c, [ws.parse("Phi_x(x,y)"), ws.parse(b)])
    print(b, "->", "ok" if chk else [str(r) for _, r in chk.residuals])

# %% [markdown]
# # Relative invariants of P(1,1)
#
# A walk through the standard realisation d/dt, d/dx, t*d/dx + x*d/dt:
# brackets, linear extensions, and invariants before and after extension.

# %%
from liext import Ansatz, prolong, solve_adi, solve_extensions, verify_adi, verify_rdi
from liext.corpus import CASES
from liext.dsl import parse_spec
from liext.workspace import Workspace

ws = Workspace(parse_spec(CASES["P1"].spec))
c = ws.structure()
for m in range(c.dim):
    for n in range(m + 1, c.dim):
        print(c.format_bracket(m, n))

# %% [markdown]
# Extensions with polynomial coefficients of degree at most two. Every
# member is a gradient field (Phi_t, Phi_x) paired with t*Phi_x + x*Phi_t + C.

# %%
fam = solve_extensions(ws.unextended(), c, Ansatz.poly(("t", "x"), 2))
print("family dimension:", fam.dimension)
for mem in fam.members:
    print("  ", tuple(str(a) for a in mem))
print(fam.normalization_note())

# %% [markdown]
# Second-order absolute invariants of the unextended operators.

# %%
ops = [prolong(Q, ws.jet(2)) for Q in ws.unextended()]
for e in ["u", "u_t^2 - u_x^2", "u_tt - u_xx"]:
    print(e, "->", verify_adi(ops, ws.parse(e)).verdict)

# %% [markdown]
# The first-order relative invariants and their multipliers. Products whose
# multipliers cancel are absolute.

# %%
for e in ["u_t - u_x", "u_t + u_x", "u_tt + 2*u_tx + u_xx", "u_tt - 2*u_tx + u_xx"]:
    rep = verify_rdi(ops, ws.parse(e))
    print(f"{e:24s} multipliers {[str(m) for m in rep.multipliers]}")

# %% [markdown]
# Extending J alone by R*d/dR turns a weight into a power of R. Searching
# F*R^K over first derivatives recovers the pairing.

# %%
ext = ws.operators(None, ("0", "0", "1"), 1)
for K in (-1, 0, 1):
    for cand in solve_adi(ext, Ansatz.span(["u_t", "u_x"]), krange=(K, K)):
        print(f"K = {K:2d}: {cand.expr}")

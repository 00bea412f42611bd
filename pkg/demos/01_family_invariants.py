# %% [markdown]
# Invariants along the three one-parameter families
#
# Each family is a rotation angle away from a product state.  Sweeping the
# angle shows which invariants switch on: the biseparable family only ever
# has concurrences on qubits 2 and 3, the W family picks up omega but never
# tau, and the GHZ family has everything.

# %%
import numpy as np

from luinvariants import classify, exact_family_invariants, family_state, three_qubit_invariants

thetas = np.linspace(0, np.pi, 7)

# %%
for fam in ("onecut", "w", "ghz"):
    print(f"\n{fam}")
    print("   theta    c2_1    c2_2    c2_3  omega2    tau2  class")
    for th in thetas:
        inv = three_qubit_invariants(family_state(fam, th))
        closed = exact_family_invariants(fam, th)
        assert np.allclose(inv.values(), closed.values(), atol=1e-12)
        cls = classify(inv).slocc_class.value
        print(f"  {th:6.3f}  {inv.c2[0]:6.3f}  {inv.c2[1]:6.3f}  {inv.c2[2]:6.3f}"
              f"  {inv.omega2:6.3f}  {inv.tau2:6.3f}  {cls}")

# %% [markdown]
# At theta = pi the W family collapses to (|010> + |001>)/sqrt(2): qubit 1
# factors out, and the classifier reports 1|23.

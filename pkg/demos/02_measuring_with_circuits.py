# %% [markdown]
# Reading invariants off a single outcome probability
#
# Every invariant here is a polynomial in the amplitudes and their conjugates.
# The *small* construction contracts copies of U|0> against transposed or
# adjoint copies of the preparation and reads the all-zeros outcome.  The
# *Bell* construction only ever prepares psi or its conjugate and contracts
# index pairs with Bell measurements, paying a factor 1/2 per pair.

# %%
from luinvariants import build_bell, build_small, family_circuit, to_openqasm
from luinvariants.states import lu_orbit_circuit
from luinvariants.synthesis import THREE_QUBIT_TARGETS, oracle_value

prep = lu_orbit_circuit(family_circuit("w", 1.3), seed=11)

# %%
print(f"{'target':9} {'oracle':>10} {'small':>10} {'bell':>10}  wires  2^k")
for t in THREE_QUBIT_TARGETS:
    small, bell = build_small(t, prep), build_bell(t, prep, "cnot")
    print(f"{str(t):9} {oracle_value(t, prep):10.6f} {small.exact_value():10.6f} "
          f"{bell.exact_value():10.6f}  {small.circuit.n_wires:2d}/{bell.circuit.n_wires:2d}"
          f"  {small.scale_log2}/{bell.scale_log2}")

# %% [markdown]
# The three-tangle circuit for a GHZ state, ready for any OpenQASM 3 toolchain.

# %%
mc = build_small("tau2", family_circuit("ghz", 1.5707963267948966))
print(mc.header()["contract"])
print(to_openqasm(mc.circuit.inline()))

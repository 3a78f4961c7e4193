"""Tour of the machine layer: allocation, primitive gates, dumps, measurement.

The machine is a dense state vector over up to 24 materialized qubits.
Registers are ordered lists of qubit positions; qubit 0 is the least
significant bit of a printed ket, so kets read right to left.
"""

import math

from qclite import MachineState, PrimitiveGate


def gate(kind, param=None, target=None, controls=()):
    return PrimitiveGate(kind, param, target, frozenset(controls))


machine = MachineState(total_qubits=4, seed=0)
print("fresh machine:")
print(machine.format_dump())

# allocate two single-qubit registers; the allocator hands out the lowest
# free positions first
a = machine.allocate_register(1)
b = machine.allocate_register(1)
print("\nregisters a ->", a.qubits, " b ->", b.qubits)

# rotate a and put b into an equal superposition
machine.apply_primitive(gate("ROT", -math.pi / 3, a.qubits[0]))
machine.apply_primitive(gate("H", target=b.qubits[0]))
print("\nafter Rot(-pi/3) on a and H on b:")
print(machine.format_dump())

# a controlled flip: X on a fresh target wherever b is set
c = machine.allocate_register(1)
machine.apply_primitive(gate("X", target=c.qubits[0], controls=(b.qubits[0],)))
print("\nafter entangling a third qubit with b:")
print(machine.format_dump())

# measurement collapses; the seeded generator makes runs reproducible
outcome = machine.measure_register(b)
print("\nmeasured b ->", outcome)
print(machine.format_dump())

# freed registers must be empty; reset clears the whole machine
machine.reset_state()
machine.free_register(c)
print("\nafter reset and freeing the helper:")
print(machine.format_dump())

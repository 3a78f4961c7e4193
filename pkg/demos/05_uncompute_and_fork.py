"""Scratch uncomputation and forking conditionals.

A subroutine with a quscratch parameter is transparently rewritten into
compute / copy-out / uncompute form, so its junk bits end in |0> on every
branch.  A conditional whose branches change classical state forks the
interpreter: every classical path is followed and its quantum operations are
emitted under that path's accumulated condition.
"""

import sys

from qclite import Session, SessionConfig, corpus_source

# -- scratch management ------------------------------------------------------

print("parity through a junk-producing helper:")
for value in (3, 5, 7):
    session = Session(SessionConfig(total_qubits=12, echo=False), out=sys.stdout)
    session.run_source(corpus_source("scratch_parity.qcl"))
    session.run_line("qureg x[3]; qureg y[1]; qureg s[1];")
    for bit in range(3):
        if value >> bit & 1:
            session.run_line(f"Not(x[{bit}]);")
    session.run_line("scratch_parity(x, y, s);")
    print(f"  x={value}:", session.echo_state(), "(y is the 4th bit from the right)")

print("\nthe same helper on a superposition keeps every branch clean:")
session = Session(SessionConfig(total_qubits=12, echo=False), out=sys.stdout)
session.run_source(corpus_source("scratch_parity.qcl"))
session.run_line("qureg x[2]; qureg y[1]; qureg s[1];")
session.run_line("H(x); scratch_parity(x, y, s);")
print(" ", session.echo_state())

# -- forking -----------------------------------------------------------------

print("\na demultiplexer forks on each selector qubit:")
session = Session(SessionConfig(total_qubits=12, echo=False), out=sys.stdout)
session.run_source(corpus_source("demux.qcl"))
session.run_line("qureg s[2]; qureg q[4];")
for sval in range(4):
    session.machine.reset_state()
    for bit in range(2):
        if sval >> bit & 1:
            session.run_line(f"Not(s[{bit}]);")
    session.run_line("demux(s, q);")
    print(f"  selector {sval}:", session.echo_state())

session.machine.reset_state()
session.run_line("H(s); demux(s, q);")
print("  superposed:  ", session.echo_state())

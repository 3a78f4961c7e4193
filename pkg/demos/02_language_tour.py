"""A quick tour of the language through a Session: declarations, loops, calls.

A Session couples the parser, the static checker and the interpreter with one
machine, exactly like the interactive loop does.
"""

import sys

from qclite import Session, SessionConfig

session = Session(SessionConfig(total_qubits=8, seed=0, echo=False), out=sys.stdout)

# classical declarations and control flow
session.run_source("""
    const third = pi / 3;
    int total = 0;
    int i;
    for i = 1 to 4 { total = total + i; }
    print total;
""")

# a classical function, usable anywhere in expressions
session.run_source("""
    int square(int k) { return k * k; }
    print square(7);
""")

# quantum registers and a small qufunct; the length of a register argument
# travels implicitly, so one definition handles every size
session.run_source("""
    qufunct ruler(qureg x) {
      int i;
      for i = #x-1 to 1 step -1 { CNot(x[i], x[0:i-1]); }
      Not(x[0]);
    }
    qureg q[3];
    ruler(q);
    ruler(q);
    print 2 ^ #q;
""")
print("state after incrementing twice:")
print(session.machine.format_dump())

# inversion runs the recorded gate tape backwards with adjoint parameters
session.run_line("!ruler(q);")
print("after one inverse call:")
print(session.machine.format_dump())

# measurement feeds results back into classical variables
session.run_source("""
    int m;
    measure q, m;
    print m;
""")

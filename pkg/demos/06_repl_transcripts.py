"""Replay the three reference interactive sessions through the qcl> loop.

Piped input is echoed after each prompt, so the captured output is the full
session transcript, byte for byte.  The same sessions run from a shell as
    qclite -n 4 --no-echo   (first session)
    qclite                  (the other two)
with the input lines on stdin.
"""

import io

from qclite import Session, SessionConfig
from qclite.cli import repl_loop

DFT_DEF = ("operator dft(qureg q) { const n=#q; int i; int j; "
           "for i=1 to n { for j=1 to i-1 { if q[n-i] and q[n-j] "
           "{ Phase(pi/2^(i-j)); } } H(q[n-i]); } flip(q); }")
INC_DEF = ("cond qufunct inc(qureg x) { int i; "
           "for i = #x-1 to 1 step -1 { CNot(x[i],x[0:i-1]); } Not(x[0]); }")

SESSIONS = [
    ("rotation and superposition, 4-qubit machine, echo off",
     SessionConfig(total_qubits=4, seed=0, echo=False),
     "qureg a[1]; qureg b[1];\nRot(-pi/3,a);\nH(b);\ndump;\n"),
    ("Fourier transform and its inverse",
     SessionConfig(total_qubits=32, seed=0, echo=True),
     f"{DFT_DEF}\nqureg q[2];\ndft(q);\n!dft(q);\n"),
    ("conditional increments under compound conditions",
     SessionConfig(total_qubits=32, seed=0, echo=True),
     f"{INC_DEF}\n"
     "qureg q[4]; qureg b[1]; qureg a[1];\n"
     "H(a & b);\n"
     "if a and b { inc(q); }\n"
     "if a or b { inc(q); }\n"
     "if not (a or b) { inc(q); }\n"),
]

for title, config, script in SESSIONS:
    print(f"=== {title} ===")
    out = io.StringIO()
    repl_loop(Session(config, out=out), stdin=io.StringIO(script))
    print(out.getvalue())

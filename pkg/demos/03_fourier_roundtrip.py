"""The bundled Fourier-transform operator versus the textbook matrix.

Assembles the operator's unitary column by column and compares it against
omega^(jk)/sqrt(N), then shows the inverse transform restoring a basis state.
"""

import numpy as np

from qclite import Session, SessionConfig, corpus_source


def operator_matrix(session, call, n_qubits):
    machine = session.machine
    dim = 1 << n_qubits
    out = np.zeros((dim, dim), dtype=complex)
    for k in range(dim):
        machine.amp[:] = 0.0
        machine.amp[k] = 1.0
        session.run_line(call)
        out[:, k] = machine.amp
    return out


for n in (2, 3):
    session = Session(SessionConfig(total_qubits=8, echo=False))
    session.run_source(corpus_source("dft.qcl"))
    session.run_line(f"qureg q[{n}];")
    matrix = operator_matrix(session, "dft(q);", n)

    dim = 1 << n
    omega = np.exp(2j * np.pi / dim)
    j, k = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
    reference = omega ** (j * k) / np.sqrt(dim)

    error = np.max(np.abs(matrix - reference))
    print(f"{n}-qubit transform: max deviation from the DFT matrix = {error:.2e}")

# forward then inverse is the identity; watch it on one register
session = Session(SessionConfig(total_qubits=32, echo=False))
session.run_source(corpus_source("dft.qcl"))
session.run_line("qureg q[2]; Not(q[1]);")
print("\ninput state:     ", session.echo_state())
session.run_line("dft(q);")
print("transformed:     ", session.echo_state())
session.run_line("!dft(q);")
print("inverse applied: ", session.echo_state())

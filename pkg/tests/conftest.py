"""Shared helpers: session construction and matrix assembly for whole routines."""

from __future__ import annotations

import io

import numpy as np
import pytest

from qclite import corpus_source
from qclite.session import Session, SessionConfig


def make_session(qubits: int = 16, seed: int = 0, echo: bool = False,
                 checks: bool = True) -> Session:
    out = io.StringIO()
    config = SessionConfig(total_qubits=qubits, seed=seed, echo=echo, checks=checks)
    return Session(config, out=out)


def session_output(session: Session) -> str:
    return session.out.getvalue()


def routine_matrix(defs: str | None, decls: str, call: str, n_qubits: int,
                   qubits: int = 24, checks: bool = False) -> np.ndarray:
    """Assemble the unitary of `call` on the first n_qubits machine qubits.

    The registers named in `decls` must cover qubits 0..n_qubits-1 in
    allocation order, so basis index k encodes the register contents.
    Emptiness checks default to off because the sweep visits basis states a
    quvoid precondition would reject; there the permissive accumulation
    semantics apply.
    """
    session = make_session(qubits=qubits, checks=checks)
    if defs:
        session.run_source(defs)
    session.run_line(decls)
    machine = session.machine
    assert machine.materialized == n_qubits, "declarations must cover the basis"
    dim = 1 << n_qubits
    out = np.zeros((dim, dim), dtype=complex)
    for k in range(dim):
        machine.amp[:] = 0.0
        machine.amp[k] = 1.0
        session.run_line(call)
        assert machine.amp.size == dim, "temporaries must be freed after the call"
        out[:, k] = machine.amp
    return out


def dft_matrix(n_qubits: int) -> np.ndarray:
    dim = 1 << n_qubits
    omega = np.exp(2j * np.pi / dim)
    j, k = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
    return omega ** (j * k) / np.sqrt(dim)


def permutation_of(matrix: np.ndarray, atol: float = 1e-9):
    """Return the permutation a 0/1 matrix encodes, or None if not one."""
    dim = matrix.shape[0]
    perm = []
    for k in range(dim):
        col = matrix[:, k]
        hits = np.nonzero(np.abs(col) > atol)[0]
        if len(hits) != 1 or abs(col[hits[0]] - 1.0) > atol:
            return None
        perm.append(int(hits[0]))
    return perm if len(set(perm)) == dim else None


@pytest.fixture(scope="session")
def corpus():
    names = ["dft.qcl", "inc.qcl", "inc_cond.qcl", "parity.qcl", "cinc.qcl",
             "demux.qcl", "scratch_parity.qcl", "demux_run.qcl", "coinflip.qcl"]
    return {name: corpus_source(name) for name in names}

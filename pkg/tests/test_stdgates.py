"""Builtin gate semantics, checked through the language surface."""

import math

import numpy as np
import pytest

from qclite import QclRuntimeError, RegisterError
from conftest import make_session, permutation_of, routine_matrix


def bitrev(value, width):
    return int(f"{value:0{width}b}"[::-1], 2)


class TestH:
    def test_single_qubit(self):
        s = make_session()
        s.run_line("qureg q[1]; H(q);")
        assert np.allclose(s.machine.amp[:2], [1 / math.sqrt(2)] * 2)

    def test_concat_uniform(self):
        s = make_session()
        s.run_line("qureg a[1]; qureg b[1]; H(a & b);")
        assert np.allclose(np.abs(s.machine.amp), [0.5] * 4)

    def test_involution(self):
        matrix = routine_matrix(None, "qureg q[2];", "H(q); H(q);", 2)
        assert np.max(np.abs(matrix - np.eye(4))) < 1e-9


class TestNot:
    def test_all_bits(self):
        s = make_session()
        s.run_line("qureg q[4]; Not(q);")
        assert abs(s.machine.amp[15]) == pytest.approx(1.0)

    def test_involution(self):
        matrix = routine_matrix(None, "qureg q[3];", "Not(q); Not(q);", 3)
        assert np.allclose(matrix, np.eye(8))

    def test_single_slice(self):
        s = make_session()
        s.run_line("qureg q[3]; Not(q[1]);")
        assert abs(s.machine.amp[2]) == pytest.approx(1.0)


class TestCNot:
    def test_all_controls_set(self):
        s = make_session()
        s.run_line("qureg t[1]; qureg c[2]; Not(c); CNot(t, c);")
        # t=qubit0 flips because both control bits are on
        assert abs(s.machine.amp[0b111]) == pytest.approx(1.0)

    def test_partial_controls(self):
        s = make_session()
        s.run_line("qureg t[1]; qureg c[2]; Not(c[1]); CNot(t, c);")
        assert abs(s.machine.amp[0b100]) == pytest.approx(1.0)

    def test_overlap_rejected(self):
        s = make_session()
        s.run_line("qureg q[2];")
        with pytest.raises(RegisterError):
            s.run_line("CNot(q[0], q[0] & q[1]);")

    def test_parity_program_popcount(self, corpus):
        # parity of x accumulated into y equals popcount mod 2
        for value in range(8):
            s = make_session()
            s.run_source(corpus["parity.qcl"])
            s.run_line("qureg x[3]; qureg y[1];")
            for bit in range(3):
                if value >> bit & 1:
                    s.run_line(f"Not(x[{bit}]);")
            s.run_line("parity(x, y);")
            index = int(np.argmax(np.abs(s.machine.amp)))
            assert index >> 3 == bin(value).count("1") % 2
            assert index & 7 == value


class TestRot:
    def test_transcript_value(self):
        s = make_session()
        s.run_line("qureg q[1]; Rot(-pi/3, q);")
        assert s.machine.amp[0] == pytest.approx(0.8660254037844387)
        assert s.machine.amp[1] == pytest.approx(0.5)

    def test_zero_angle_identity(self):
        matrix = routine_matrix(None, "qureg q[1];", "Rot(0, q);", 1)
        assert np.allclose(matrix, np.eye(2))

    def test_inverse_pair(self):
        matrix = routine_matrix(None, "qureg q[2];",
                                "Rot(0.77, q); Rot(-0.77, q);", 2)
        assert np.max(np.abs(matrix - np.eye(4))) < 1e-9


class TestPhase:
    def test_conditioned_sign_flip(self):
        s = make_session()
        s.run_line("qureg q[2]; H(q);")
        s.run_line("if q[0] and q[1] { Phase(pi); }")
        assert s.machine.amp[3] == pytest.approx(-0.5)
        assert s.machine.amp[1] == pytest.approx(0.5)

    def test_zero_identity(self):
        matrix = routine_matrix(None, "qureg q[1];", "Phase(0);", 1)
        assert np.allclose(matrix, np.eye(2))

    def test_inverse_pair(self):
        matrix = routine_matrix(None, "qureg q[1];", "Phase(1.1); Phase(-1.1);", 1)
        assert np.allclose(matrix, np.eye(2))


class TestFlip:
    def test_reverses_bit_order(self):
        matrix = routine_matrix(None, "qureg q[3];", "flip(q);", 3)
        perm = permutation_of(matrix)
        assert perm == [bitrev(k, 3) for k in range(8)]

    def test_involution(self):
        matrix = routine_matrix(None, "qureg q[4];", "flip(q); flip(q);", 4)
        assert np.allclose(matrix, np.eye(16))

    def test_palindromes_fixed(self):
        matrix = routine_matrix(None, "qureg q[3];", "flip(q);", 3)
        for k in (0b000, 0b101, 0b111, 0b010):
            assert matrix[k, k] == pytest.approx(1.0)


class TestFanout:
    def test_copies_basis_value(self):
        s = make_session()
        s.run_line("qureg a[2]; qureg b[2]; Not(a[0]); Not(a[1]);")
        s.run_line("fanout(a, b);")
        assert abs(s.machine.amp[0b1111]) == pytest.approx(1.0)

    def test_zero_fixed_point(self):
        s = make_session()
        s.run_line("qureg a[2]; qureg b[2]; fanout(a, b);")
        assert abs(s.machine.amp[0]) == pytest.approx(1.0)

    def test_entangles_superposition(self):
        s = make_session()
        s.run_line("qureg a[1]; qureg b[1]; H(a); fanout(a, b);")
        amp = s.machine.amp
        assert abs(amp[0b00]) == pytest.approx(1 / math.sqrt(2))
        assert abs(amp[0b11]) == pytest.approx(1 / math.sqrt(2))
        assert abs(amp[0b01]) < 1e-12 and abs(amp[0b10]) < 1e-12

    def test_length_mismatch(self):
        s = make_session()
        s.run_line("qureg a[2]; qureg b[1];")
        with pytest.raises(RegisterError):
            s.run_line("fanout(a, b);")

    def test_quvoid_target_must_be_empty(self):
        s = make_session()
        s.run_line("qureg a[1]; qureg b[1]; Not(b);")
        with pytest.raises(QclRuntimeError):
            s.run_line("fanout(a, b);")


class TestBuiltinProperties:
    @pytest.mark.parametrize("decls,call,n", [
        ("qureg q[3];", "Not(q);", 3),
        ("qureg t[1]; qureg c[2];", "CNot(t, c);", 3),
        ("qureg q[4];", "flip(q);", 4),
        ("qureg a[2]; qureg b[2];", "fanout(a, b);", 4),
    ])
    def test_permutation_builtins_are_permutations(self, decls, call, n):
        matrix = routine_matrix(None, decls, call, n, qubits=8)
        assert permutation_of(matrix) is not None

    @pytest.mark.parametrize("decls,call,n", [
        ("qureg q[2];", "H(q);", 2),
        ("qureg q[2];", "Rot(0.3, q);", 2),
        ("qureg q[2];", "Phase(0.9);", 2),
        ("qureg q[3];", "flip(q);", 3),
        ("qureg a[2]; qureg b[2];", "fanout(a, b);", 4),
    ])
    def test_builtins_are_unitary(self, decls, call, n):
        matrix = routine_matrix(None, decls, call, n, qubits=8)
        assert np.max(np.abs(matrix.conj().T @ matrix - np.eye(1 << n))) < 1e-9

    @pytest.mark.parametrize("gate", ["H", "Not"])
    def test_broadcast_order_irrelevant(self, gate):
        forward = routine_matrix(None, "qureg q[3];", f"{gate}(q);", 3)
        reverse = routine_matrix(
            None, "qureg q[3];",
            f"{gate}(q[2]); {gate}(q[1]); {gate}(q[0]);", 3)
        assert np.max(np.abs(forward - reverse)) < 1e-9

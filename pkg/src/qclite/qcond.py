"""Quantum conditions: polynomial normal form, enable synthesis and if-execution.

A condition over qubits is compiled to a polynomial over GF(2): an XOR of AND
monomials plus an optional constant term.  The polynomial drives one of two
enable plans: a single positive monomial becomes a direct multi-control, and
anything else is accumulated into one transparently allocated scratch qubit by
a CNot sequence (one controlled flip per monomial, plus an initial flip for
the constant term).  The same plan, run in reverse, uncomputes the scratch.

Forking executes both classical paths of a conditional whose branches change
classical state: each path gets a cloned frame, its branch condition is pushed
as an enable plan for the *remainder* of the subroutine, and the paths are
serialized true-branch first, depth first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import QclRuntimeError, RegisterError
from .machine import PrimitiveGate, RegisterMap, adjoint_of_tape


# --------------------------------------------------------------------------
# Condition expressions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CondConst:
    value: bool


@dataclass(frozen=True)
class CondAtom:
    """Conjunction over the qubits of one register operand."""

    qubits: frozenset[int]


@dataclass(frozen=True)
class CondNot:
    operand: object


@dataclass(frozen=True)
class CondBin:
    op: str  # and | or | xor
    left: object
    right: object


CondExpr = CondConst | CondAtom | CondNot | CondBin


def cond_truth(cond: CondExpr, assignment) -> bool:
    """Evaluate a condition for a qubit->bool assignment (test oracle)."""
    if isinstance(cond, CondConst):
        return cond.value
    if isinstance(cond, CondAtom):
        return all(assignment[q] for q in cond.qubits)
    if isinstance(cond, CondNot):
        return not cond_truth(cond.operand, assignment)
    a = cond_truth(cond.left, assignment)
    b = cond_truth(cond.right, assignment)
    if cond.op == "and":
        return a and b
    if cond.op == "or":
        return a or b
    if cond.op == "xor":
        return a != b
    raise ValueError(f"unknown connective {cond.op!r}")


def cond_support(cond: CondExpr) -> frozenset[int]:
    if isinstance(cond, CondConst):
        return frozenset()
    if isinstance(cond, CondAtom):
        return cond.qubits
    if isinstance(cond, CondNot):
        return cond_support(cond.operand)
    return cond_support(cond.left) | cond_support(cond.right)


# --------------------------------------------------------------------------
# Polynomial normal form over GF(2)
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ZhegalkinPoly:
    """XOR of AND monomials over qubit indices, plus a constant term."""

    const: bool
    monomials: frozenset[frozenset[int]]

    def is_false(self) -> bool:
        return not self.const and not self.monomials

    def is_true(self) -> bool:
        return self.const and not self.monomials

    def support(self) -> frozenset[int]:
        out: set[int] = set()
        for m in self.monomials:
            out |= m
        return frozenset(out)

    def canonical_monomials(self) -> list[frozenset[int]]:
        return sorted(self.monomials, key=lambda m: (len(m), sorted(m)))

    def xor(self, other: ZhegalkinPoly) -> ZhegalkinPoly:
        return ZhegalkinPoly(self.const != other.const,
                             self.monomials ^ other.monomials)

    def and_(self, other: ZhegalkinPoly) -> ZhegalkinPoly:
        terms: set[frozenset[int]] = set()

        def toggle(m):
            if m in terms:
                terms.remove(m)
            else:
                terms.add(m)

        for m1 in self.monomials:
            for m2 in other.monomials:
                toggle(m1 | m2)
        if self.const:
            for m2 in other.monomials:
                toggle(m2)
        if other.const:
            for m1 in self.monomials:
                toggle(m1)
        return ZhegalkinPoly(self.const and other.const, frozenset(terms))

    def negate(self) -> ZhegalkinPoly:
        return ZhegalkinPoly(not self.const, self.monomials)

    def truth(self, assignment) -> bool:
        value = self.const
        for m in self.monomials:
            if all(assignment[q] for q in m):
                value = not value
        return value


POLY_FALSE = ZhegalkinPoly(False, frozenset())
POLY_TRUE = ZhegalkinPoly(True, frozenset())


def to_xdnf(cond: CondExpr) -> ZhegalkinPoly:
    """Lower a boolean condition to its XOR-of-AND normal form."""
    if isinstance(cond, CondConst):
        return POLY_TRUE if cond.value else POLY_FALSE
    if isinstance(cond, CondAtom):
        return ZhegalkinPoly(False, frozenset({cond.qubits}))
    if isinstance(cond, CondNot):
        return to_xdnf(cond.operand).negate()
    left = to_xdnf(cond.left)
    right = to_xdnf(cond.right)
    if cond.op == "and":
        return left.and_(right)
    if cond.op == "xor":
        return left.xor(right)
    if cond.op == "or":
        return left.xor(right).xor(left.and_(right))
    raise ValueError(f"unknown connective {cond.op!r}")


# --------------------------------------------------------------------------
# Enable plans
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DirectPlan:
    """Use the condition's own qubits as a plain conjunction of controls."""

    controls: tuple[int, ...]
    compute: tuple[PrimitiveGate, ...] = ()
    scratch: RegisterMap | None = None


@dataclass(frozen=True)
class SynthPlan:
    """Accumulate the condition into one scratch enable qubit by CNots."""

    controls: tuple[int, ...]
    compute: tuple[PrimitiveGate, ...]
    scratch: RegisterMap


EnablePlan = DirectPlan | SynthPlan


def synthesize_enable(poly: ZhegalkinPoly, machine, force_scratch: bool = False) -> EnablePlan:
    """Build the enable plan for a non-constant condition polynomial."""
    if poly.is_false() or poly.is_true():
        raise QclRuntimeError("cannot synthesize an enable for a constant condition")
    monomials = poly.canonical_monomials()
    if not force_scratch and not poly.const and len(monomials) == 1:
        return DirectPlan(tuple(sorted(monomials[0])))
    scratch = machine.allocate_register(1)
    e = scratch.qubits[0]
    gates: list[PrimitiveGate] = []
    if poly.const:
        gates.append(PrimitiveGate("X", None, e, frozenset()))
    for m in monomials:
        gates.append(PrimitiveGate("X", None, e, frozenset(m)))
    return SynthPlan((e,), tuple(gates), scratch)


def conditionalize_tape(tape, enable) -> list[PrimitiveGate]:
    """Grow every gate's control set by the enable qubits.

    The enable qubits must be disjoint from every target and control already
    on the tape; an operator under a condition may not touch the qubits that
    condition is built from.
    """
    enable = frozenset(enable)
    out = []
    for g in tape:
        used = set(g.controls)
        if g.target is not None:
            used.add(g.target)
        if used & enable:
            raise RegisterError("conditioned operation overlaps its enable qubits")
        out.append(PrimitiveGate(g.kind, g.param, g.target, g.controls | enable))
    return out


# --------------------------------------------------------------------------
# Quantum if execution
# --------------------------------------------------------------------------

def exec_quantum_if(ctx, cond: CondExpr, run_then, run_else=None) -> None:
    """Run a conditional block pair under a (possibly quantum) condition.

    A condition that folds to a classical constant short-circuits to plain
    execution of the selected branch.  Otherwise the then-branch runs with the
    enable controls active; with an else-branch present the enable qubit is
    inverted in between, exactly the conditional-call / flip / inverse
    conditional-call / flip expansion.
    """
    poly = to_xdnf(cond)
    if poly.is_false():
        if run_else is not None:
            run_else()
        return
    if poly.is_true():
        run_then()
        return
    guard = poly.support()
    plan = synthesize_enable(poly, ctx.machine)
    if run_else is not None and isinstance(plan, DirectPlan) and len(plan.controls) > 1:
        plan = synthesize_enable(poly, ctx.machine, force_scratch=True)
    emitted = [ctx.emit_gate(g) for g in plan.compute]
    ctx.push_enable(plan.controls, guard)
    try:
        run_then()
    finally:
        ctx.pop_enable()
    if run_else is not None:
        toggle = plan.controls[0]
        ctx.emit("X", None, toggle, ())
        ctx.push_enable(plan.controls, guard)
        try:
            run_else()
        finally:
            ctx.pop_enable()
        ctx.emit("X", None, toggle, ())
    for g in adjoint_of_tape(emitted):
        ctx.emit_gate(g)
    if plan.scratch is not None:
        ctx.release_temp(plan.scratch)


def exec_forking_if(ctx, path, cond: CondExpr, then_block, else_block,
                    run_block, join) -> None:
    """Fork classical execution on a quantum condition.

    `run_block(stmts, path, join)` must execute the block and then the whole
    remainder of the enclosing subroutine before returning, so popping the
    enable plan after it returns places the uncompute at the join point.
    """
    for branch_cond, block in ((cond, then_block), (CondNot(cond), else_block)):
        poly = to_xdnf(branch_cond)
        if poly.is_false():
            continue
        forked = path.fork(branch_cond)
        ctx.note_fork()
        stmts = block if block is not None else []
        if poly.is_true():
            run_block(stmts, forked, join)
            continue
        plan = synthesize_enable(poly, ctx.machine)
        emitted = [ctx.emit_gate(g) for g in plan.compute]
        ctx.push_enable(plan.controls, poly.support())
        try:
            run_block(stmts, forked, join)
        finally:
            ctx.pop_enable()
        for g in adjoint_of_tape(emitted):
            ctx.emit_gate(g)
        if plan.scratch is not None:
            ctx.release_temp(plan.scratch)

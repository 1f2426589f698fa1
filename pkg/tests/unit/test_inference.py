import pytest

from cacsa.constraints.generation import gen_sub
from cacsa.constraints.problem import conj
from cacsa.inference.annotations import annotate_symbol, check_rule_annotations, declared_size_vars, output_size_var
from cacsa.inference.errors import ErrorKind, TypingError
from cacsa.inference.infer import (
    check, check_annotated, check_sorted, infer, infer_annotated, infer_deferred, infer_type,
)
from cacsa.inference.session import InferSession
from cacsa.inference.validation import validate_env, validate_rules, validate_signature
from cacsa.signatures.seed_signatures import NAT
from cacsa.sizes.algebra import INFTY, SizeExpr, size_var, succ
from cacsa.solver.solve import solve
from cacsa.subtyping.subtyping import subtype
from cacsa.syntax.loader import load_source
from cacsa.terms.printer import show_term
from cacsa.terms.signature import Env
from cacsa.terms.term import (
    BOX, STAR, Abs, App, ConstPred, Symb, Var, app, arrow, erase_sizes, size_vars, subst_size,
)

NAT_T = ConstPred("nat")
ZERO, S, MINUS, DIV = Symb("0"), Symb("s"), Symb("minus"), Symb("div")
c = size_var("c")


def nat(size=INFTY):
    return ConstPred("nat", size)


def annotated_env():
    return Env().extend("x", nat(c)).extend("y", NAT_T)


def kinds(errors):
    return [e.kind for e in errors]


# ---------------- Inference ----------------

def test_infer_basic_types(nat_sig):
    env = Env().extend("x", NAT_T)
    assert infer_type(nat_sig, env, NAT_T) == STAR
    assert infer_type(nat_sig, env, App(S, Var("x"))) == NAT_T
    assert infer_type(nat_sig, Env(), ZERO) == nat(SizeExpr("$1", 1))
    assert infer_type(nat_sig, Env(), arrow(NAT_T, NAT_T)) == STAR


def test_application_instantiates_fresh_sizes(nat_sig):
    session = InferSession(nat_sig)
    ty = infer(nat_sig, Env(), App(S, App(S, ZERO)), session)
    assert isinstance(ty, ConstPred)
    assert not ty.ann.is_infinite
    assert ty.ann.shift == 3
    assert len(session.solve_log) == 2


def test_inference_errors(nat_sig):
    cases = [
        (App(STAR, STAR), ErrorKind.NOT_A_PRODUCT),
        (BOX, ErrorKind.BOX_HAS_NO_TYPE),
        (Var("z"), ErrorKind.UNBOUND_VARIABLE),
        (Symb("missing"), ErrorKind.INVALID_DECLARATION),
    ]
    for term, kind in cases:
        with pytest.raises(TypingError) as info:
            infer_type(nat_sig, Env(), term)
        assert info.value.kind is kind


def test_argument_mismatch_carries_residue(bool_sig):
    with pytest.raises(TypingError) as info:
        infer_type(bool_sig, Env(), App(S, Symb("true")))
    assert info.value.kind is ErrorKind.UNSAT_CONSTRAINTS
    assert info.value.residue is not None and info.value.residue.bottom


def test_trace_records_rules(nat_sig):
    session = InferSession(nat_sig, trace=True)
    infer(nat_sig, Env(), App(S, ZERO), session)
    assert any("(app)" in line for line in session.trace_lines)
    assert any("(symb)" in line for line in session.trace_lines)


def random_nat_term(rng, depth: int, bound=("x",)):
    """An ∞-term of type nat over 0, s, minus, div, β-redexes and the bound names."""
    if depth == 0 or rng.random() < 0.2:
        leaves = [ZERO, *(Var(n) for n in bound)]
        return leaves[int(rng.integers(len(leaves)))]
    choice = int(rng.integers(4))
    if choice == 0:
        return App(S, random_nat_term(rng, depth - 1, bound))
    if choice in (1, 2):
        fun = MINUS if choice == 1 else DIV
        return app(fun, random_nat_term(rng, depth - 1, bound), random_nat_term(rng, depth - 1, bound))
    y = f"y{depth}"
    body = random_nat_term(rng, depth - 1, bound + (y,))
    return App(Abs(y, NAT_T, body), random_nat_term(rng, depth - 1, bound))


def test_inferred_types_check(nat_sig, rng):
    env = Env().extend("x", NAT_T)
    for _ in range(500):
        t = random_nat_term(rng, 3)
        session = InferSession(nat_sig, used={"$1", "$2"})
        ty = infer(nat_sig, env, t, session)
        assert size_vars(ty).isdisjoint({"$1", "$2"}), show_term(t)
        check(nat_sig, env, t, ty)
        check(nat_sig, env, t, erase_sizes(ty))


# ---------------- Checking ----------------

def test_check_gives_smallest_instance(nat_sig):
    psi = check(nat_sig, Env(), ZERO, nat(size_var("b")))
    image = psi.get("b")
    assert image.shift == 1 and image.base.startswith("$")
    assert check(nat_sig, Env(), ZERO, NAT_T).restrict(size_vars(NAT_T)).domain == set()


def test_check_rejects_wrong_types(bool_sig):
    env = Env().extend("x", NAT_T)
    with pytest.raises(TypingError) as info:
        check(bool_sig, env, Var("x"), ConstPred("bool"))
    assert info.value.kind is ErrorKind.UNSAT_CONSTRAINTS
    with pytest.raises(TypingError) as info:
        check(bool_sig, env, Var("x"), ZERO)
    assert info.value.kind is ErrorKind.SORT_MISMATCH


def test_check_sorted(nat_sig):
    assert check_sorted(nat_sig, Env(), arrow(nat(c), nat(succ(c))), InferSession(nat_sig)).value == "Type"


def test_fuel_exhaustion_is_a_typing_error():
    source = load_source("symbol F : Type . rule F --> F . symbol f : F -> F . assume x : F .")
    env = Env().extend("x", Symb("F"))
    with pytest.raises(TypingError) as info:
        infer_type(source.signature, env, App(Symb("f"), Var("x")), fuel=50)
    assert info.value.kind is ErrorKind.FUEL_EXHAUSTED


# ---------------- Deferred and annotated environments ----------------

def test_deferred_inference_collects_constraints(nat_sig):
    ty, collected = infer_deferred(nat_sig, annotated_env(), app(MINUS, Var("x"), Var("y")))
    result = solve(conj(collected, gen_sub(ty, nat(c))))
    assert result.satisfiable
    assert not result.mgs.get("c").is_infinite
    instance = subst_size(result.mgs, ty)
    assert subtype(nat_sig, instance, subst_size(result.mgs, nat(c)))


def test_successor_outgrows_its_argument(nat_sig):
    ty, collected = infer_deferred(nat_sig, annotated_env(), App(S, Var("x")))
    mgs = solve(collected).mgs
    instance, bound = subst_size(mgs, ty), subst_size(mgs, nat(c))
    assert not subtype(nat_sig, instance, bound)
    assert subtype(nat_sig, bound, instance)


def test_division_result_bounded_by_dividend(nat_sig):
    psi = check_annotated(nat_sig, annotated_env(), app(DIV, Var("x"), Var("y")), nat(c))
    assert not psi.get("c").is_infinite


def test_check_annotated(nat_sig):
    env = annotated_env()
    assert check_annotated(nat_sig, env, App(S, Var("x")), nat(c)).get("c") == INFTY
    assert not check_annotated(nat_sig, env, App(S, Var("x")), nat(succ(c))).get("c").is_infinite


def test_infer_annotated_instantiates_environment(nat_sig):
    ty, mgs = infer_annotated(nat_sig, annotated_env(), App(S, Var("x")))
    assert ty == nat(succ(mgs.get("c")))


# ---------------- Validation ----------------

def test_seed_signatures_are_valid(nat_sig, list_sig):
    assert nat_sig.lookup("nat").sort.value == "Kind"
    assert nat_sig.lookup("minus").sort.value == "Type"
    assert list_sig.lookup("list").sort.value == "Kind"


def test_invalid_declarations():
    source = load_source(NAT + "symbol f : Type Type .\ndata bad : nat .")
    errors = validate_signature(source.signature)
    assert kinds(errors) == [ErrorKind.INVALID_DECLARATION, ErrorKind.INVALID_DECLARATION]
    assert "'f'" in errors[0].message
    assert errors[1].location.line == 6


def test_diverging_declaration_runs_out_of_fuel():
    source = load_source(NAT + "symbol G : Type .\nrule G --> G .\nsymbol k : G .\nsymbol m : k 0 .")
    with pytest.raises(TypingError) as info:
        validate_signature(source.signature, fuel=20)
    assert info.value.kind is ErrorKind.FUEL_EXHAUSTED
    assert info.value.location.line == 8
    assert "'m'" in info.value.message


@pytest.mark.parametrize("rule", [
    "rule s x --> y .",
    "rule nat --> nat .",
    "rule s x y --> x .",
    "rule g nat^a --> nat .",
])
def test_ill_formed_rules(rule):
    source = load_source(NAT + "symbol g : Type -> Type .\n" + rule)
    validate_signature(source.signature)
    assert kinds(validate_rules(source.signature)) == [ErrorKind.ILL_FORMED_RULE]


def test_validate_env_records_sorts(nat_sig):
    env = validate_env(nat_sig, Env().extend("A", STAR).extend("x", nat(c)))
    assert [e.sort.value for e in env] == ["Kind", "Type"]
    with pytest.raises(TypingError):
        validate_env(nat_sig, Env().extend("x", ZERO))


# ---------------- Size annotations ----------------

def test_declared_and_output_vars(nat_sig):
    ty = nat_sig.lookup("minus").type
    assert declared_size_vars(ty) == ["a", "b"]
    assert output_size_var(ty) == "a"
    assert output_size_var(STAR) is None


def test_minus_annotations(nat_sig):
    result = annotate_symbol(nat_sig, "minus")
    assert result.accepted
    assert len(result.reports) == 3
    assert all(r.accepted for r in result.reports)


def test_open_output_size_is_identified():
    source = load_source(NAT + """
        symbol minus : nat^a -> nat^b -> nat^X .
        rule minus 0 x --> 0 .
        rule minus x 0 --> x .
        rule minus (s x) (s y) --> minus x y .
    """)
    result = annotate_symbol(source.signature, "minus")
    assert result.accepted
    assert result.relation() == "X = a"


def test_identity_annotations():
    source = load_source(NAT + "symbol id : nat^a -> nat^X .\nrule id x --> x .")
    assert annotate_symbol(source.signature, "id").relation() == "X = a"

    source = load_source(NAT + "symbol id : nat^a -> nat^a .\nrule id x --> s x .")
    result = annotate_symbol(source.signature, "id")
    assert not result.accepted
    assert result.relation() == "a = oo (not size-preserving)"


def test_list_annotations(list_sig):
    for name in ("insert", "sort"):
        result = annotate_symbol(list_sig, name)
        assert result.accepted, [r.relation() for r in result.reports]


def test_rule_report_keeps_pattern_env(nat_sig):
    rule = nat_sig.rules_for("minus")[2]
    report = check_rule_annotations(nat_sig, rule)
    assert report.env.names == {"x", "y"}
    assert report.result.satisfiable


def test_annotating_unknown_symbol(nat_sig):
    with pytest.raises(TypingError):
        annotate_symbol(nat_sig, "missing")

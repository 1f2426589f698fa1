import pytest

from cacsa.sizes.algebra import INFTY, SizeExpr, size_var, succ
from cacsa.sizes.substitution import EMPTY_SUBST, SizeSubst
from cacsa.terms.printer import show_annotation, show_term
from cacsa.terms.signature import Env, RewriteRule, Signature, SymbolSig
from cacsa.terms.term import (
    BOX, STAR, Abs, App, ConstPred, Prod, SortKind, Symb, TermClass, Var,
    align_binders, alpha_eq, app, arrow, classify, erase_sizes, free_vars, product_spine, size_vars, spine,
    subst_size, subst_term,
)

a = size_var("a")
NAT = ConstPred("nat")
NAT_A = ConstPred("nat", a)
ZERO, S = Symb("0"), Symb("s")


def test_alpha_equivalence():
    assert alpha_eq(Abs("x", NAT, Var("x")), Abs("y", NAT, Var("y")))
    assert not alpha_eq(NAT_A, ConstPred("nat", size_var("b")))
    assert not alpha_eq(Prod("x", STAR, Var("x")), Abs("x", STAR, Var("x")))
    # a free y is not the bound y
    assert not alpha_eq(Abs("x", NAT, Var("y")), Abs("y", NAT, Var("y")))


def test_variables():
    assert size_vars(arrow(NAT_A, ConstPred("nat", succ(a)))) == {"a"}
    assert size_vars(app(ConstPred("list"), Var("A"), Var("n"))) == set()
    assert free_vars(Abs("x", NAT, App(Var("x"), Var("y")))) == {"y"}


def test_size_substitution():
    assert subst_size(SizeSubst.of({"a": INFTY}), ConstPred("nat", succ(a))) == NAT
    t = arrow(NAT_A, NAT_A)
    assert subst_size(EMPTY_SUBST, t) is t
    assert erase_sizes(t) == arrow(NAT, NAT)


def test_term_substitution_avoids_capture():
    assert subst_term({"x": ZERO}, App(S, Var("x"))) == App(S, ZERO)
    t = Abs("x", NAT, App(Var("x"), Var("y")))
    result = subst_term({"y": Var("x")}, t)
    assert free_vars(result) == {"x"}
    assert alpha_eq(result, Abs("z", NAT, App(Var("z"), Var("x"))))
    # a binder shadows the substituted name
    assert subst_term({"x": ZERO}, Abs("x", NAT, Var("x"))) == Abs("x", NAT, Var("x"))


def test_spines():
    head, args = spine(app(Symb("minus"), ZERO, Var("x")))
    assert head == Symb("minus")
    assert args == [ZERO, Var("x")]
    binders, codomain = product_spine(Prod("A", STAR, arrow(Var("A"), Var("A"))))
    assert [name for name, _ in binders] == ["A", "_"]
    assert codomain == Var("A")


def test_arrow_binder_avoids_free_names():
    t = arrow(NAT, Var("_"))
    assert t.binder != "_"
    assert free_vars(t) == {"_"}


def test_align_binders_renames_to_common_name():
    name, left, right = align_binders(Prod("x", NAT, Var("x")), Prod("y", NAT, Var("y")))
    assert left == right == Var(name)


def test_classify():
    sorts = {"0": SortKind.STAR, "nat": SortKind.BOX}
    assert classify(ZERO, sorts) is TermClass.OBJECT
    assert classify(NAT_A, sorts) is TermClass.PREDICATE
    assert classify(STAR) is TermClass.SORT
    assert classify(arrow(STAR, arrow(NAT, STAR)), sorts) is TermClass.KIND
    assert classify(Prod("A", STAR, Var("A"))) is TermClass.PREDICATE


# ---------------- Signatures and environments ----------------

def test_signature_rejects_duplicates():
    sig = Signature()
    sig.declare(SymbolSig("nat", STAR, is_const_pred=True))
    with pytest.raises(ValueError):
        sig.declare(SymbolSig("nat", STAR))
    assert sig.is_const_pred("nat")
    assert sig.lookup("missing") is None


def test_rules_are_indexed_by_head():
    sig = Signature()
    rule = RewriteRule(app(Symb("minus"), Var("x"), ZERO), Var("x"))
    sig.add_rule(rule)
    assert rule.head == "minus"
    assert rule.args == [Var("x"), ZERO]
    assert sig.rules_for("minus") == [rule]
    assert sig.rules_for("div") == []


def test_symbol_arity_and_sort():
    sig = Signature()
    sig.declare(SymbolSig("minus", arrow(NAT_A, arrow(NAT, NAT_A))))
    assert sig.lookup("minus").arity == 2
    sig.set_sort("minus", SortKind.STAR)
    assert sig.symbol_sorts() == {"minus": SortKind.STAR}


def test_env_lookup_prefers_latest_entry():
    env = Env().extend("x", NAT).extend("y", NAT_A).extend("x", NAT_A)
    assert env.lookup("x").type == NAT_A
    assert env.names == {"x", "y"}
    assert env.size_vars() == {"a"}
    assert len(env) == 3
    assert env.lookup("z") is None


# ---------------- Printing ----------------

def test_show_term():
    assert show_term(arrow(NAT_A, ConstPred("nat", succ(a)))) == "nat^a -> nat^(s a)"
    assert show_term(Prod("A", STAR, app(ConstPred("list", a), Var("A"), ZERO))) == "(A:Type) list^a A 0"
    assert show_term(Abs("x", NAT, Var("x"))) == "[x:nat] x"
    assert show_term(App(S, App(S, ZERO))) == "s (s 0)"
    assert show_term(arrow(arrow(NAT, NAT), NAT)) == "(nat -> nat) -> nat"
    assert show_term(BOX) == "Kind"
    assert show_annotation(SizeExpr("a", 2)) == "(s s a)"

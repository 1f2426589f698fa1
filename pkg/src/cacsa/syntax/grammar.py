"""
grammar.py

Lark grammar of `.cacsa` source files and the parse entry point.

    data nat : Type .
    symbol s : nat^a -> nat^(s a) .
    rule minus (s x) (s y) --> minus x y .
    assume x : nat .
    infer s x .
    check 0 : nat^b .
    annotate minus .

Sizes are `oo`, an identifier, or `s` applied to a size; compound sizes are
parenthesized after `^`. An omitted annotation means `oo`. `--` starts a
comment (except for the rule arrow `-->`).
"""
from __future__ import annotations

from lark import Lark, Tree, UnexpectedInput

GRAMMAR = r"""
start: decl*

?decl: "data" IDENT ":" term "."             -> data_decl
     | "symbol" IDENT ":" term "."           -> symbol_decl
     | "rule" term "-->" term rule_env? "."  -> rule_decl
     | "assume" IDENT ":" term "."           -> assume_decl
     | "infer" term "."                      -> infer_goal
     | "check" term ":" term "."             -> check_goal
     | "annotate" IDENT "."                  -> annotate_goal

rule_env: "[" "in" binding ("," binding)* "]"
binding: IDENT ":" term

?term: binder
     | arrow

binder: "(" IDENT ":" term ")" term          -> prod
      | "[" IDENT ":" term "]" term          -> abs

?arrow: app "->" term                        -> arrow
      | app

?app: app atom                               -> application
    | atom

?atom: IDENT                                 -> ident
     | IDENT "^" size_atom                   -> annotated
     | "(" term ")"

?size: "s" size                              -> size_succ
     | size_atom

?size_atom: IDENT                            -> size_ident
          | "(" size ")"

IDENT: /[A-Za-z0-9_][A-Za-z0-9_']*/
COMMENT: /--(?!>)[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

_PARSER = Lark(GRAMMAR, parser="lalr", propagate_positions=True)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


def parse(text: str) -> Tree:
    try:
        return _PARSER.parse(text)
    except UnexpectedInput as exc:
        line = exc.line if exc.line and exc.line > 0 else max(1, text.count("\n") + 1)
        column = exc.column if exc.column and exc.column > 0 else 1
        context = exc.get_context(text).strip().splitlines()
        hint = f" near '{context[0].strip()}'" if context else ""
        raise ParseError(f"unexpected input{hint}", line, column) from exc

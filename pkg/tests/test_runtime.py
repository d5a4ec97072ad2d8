import math
import re
import statistics

import pytest
from hypothesis import given, strategies as st

from fcl import run
from fcl.errors import (
    ArityError, FclWarning, MissingArgError, UnboundNameError, ValueTypeError,
)
from fcl.runtime import builtins
from fcl.runtime.environment import Environment
from fcl.runtime.evaluator import apply, evaluate
from fcl.runtime.printing import format_numbers, format_value
from fcl.runtime.values import (
    MISSING, NULL, Builtin, Matrix, NumberVec, SpecialForm, StringVec, Table, bools,
    num, strs,
)
from fcl.syntax import Param, parse

from corpus import ADDRESS_INPUT, ADDRESS_OUTPUT

# 1/2 ln 10 to 30 digits (mpmath, mp.dps = 30).
HALF_LN_10 = 1.15129254649702284200899572734


def test_literals_and_lookup(env):
    assert run("sqrt(c(4, 9))", env) == num(2, 3)
    assert run("'a'", env) == strs("a")
    assert run("TRUE", env) == bools(True)
    assert run("NULL", env) is NULL
    assert run("", env) is NULL


def test_unbound_symbol():
    with pytest.raises(UnboundNameError):
        evaluate(parse("x"), Environment())


def test_log_sqrt(env):
    assert run("log(sqrt(10))", env).elements[0] == pytest.approx(HALF_LN_10, abs=1e-10)


def test_assignment_defines_locally(env):
    assert run("x <- 3\nf <- function() { x <- 5; x }\nc(f(), x)", env) == num(5, 3)


def test_closure_captures_environment(env):
    assert run("make <- function(n) function(x) x + n\nadd2 <- make(2)\nadd2(40)", env) == num(42)


def test_base_environment_bindings(env):
    assert isinstance(env.lookup("log"), Builtin)
    assert isinstance(env.lookup("fc"), SpecialForm)
    with pytest.raises(UnboundNameError):
        run("undefined_thing", env)


def test_call_non_function(env):
    with pytest.raises(UnboundNameError, match="could not find function"):
        run("x <- 1\nx(2)", env)
    with pytest.raises(ValueTypeError):
        run("(1)(2)", env)


def test_call_head_skips_non_function_bindings(env):
    assert run("c <- 5\nc(c, 1)", env) == num(5, 1)


# argument matching

def test_head_default_n(env):
    x = num(*range(1, 11))
    assert apply(env.lookup("head"), [("x", x)]) == num(1, 2, 3, 4, 5, 6)


def test_named_then_positional(env):
    f = run("function(a, b, c) c(a, b, c)", env)
    assert apply(f, [(None, num(1)), ("a", num(2)), (None, num(3))]) == num(2, 1, 3)


@pytest.mark.parametrize("args", [
    [(None, num(1)), (None, num(2)), (None, num(3))],
    [("z", num(1))],
    [("a", num(1)), ("a", num(2))],
])
def test_arity_errors(env, args):
    f = run("function(a, b) a", env)
    with pytest.raises(ArityError):
        apply(f, args)


def test_missing_without_default_raises_on_access(env):
    f = run("function(a, b) a", env)
    assert apply(f, [(None, num(7))]) == num(7)
    g = run("function(a, b) b", env)
    with pytest.raises(MissingArgError):
        apply(g, [(None, num(7))])


def test_default_is_evaluated_in_call_frame(env):
    f = run("function(x, n = length(x)) n", env)
    assert apply(f, [(None, num(4, 5, 6))]) == num(3)


def test_builtins_see_missing():
    seen = {}

    def probe(a, b):
        seen.update(a=a, b=b)
        return NULL

    f = Builtin("probe", (Param("a"), Param("b")), probe)
    apply(f, [("b", num(1))])
    assert seen["a"] is MISSING and seen["b"] == num(1)


@given(st.lists(st.sampled_from(["a", "b", "c", None]), max_size=5))
def test_matching_is_total(names):
    """Either every argument is bound or ArityError is raised."""
    formals = ("a", "b", "c")
    args = [(n, num(i)) for i, n in enumerate(names)]
    f = Builtin("f", tuple(Param(n) for n in formals), lambda **kw: kw)
    try:
        slots = apply(f, args)
    except ArityError:
        return
    bound = [v for v in slots.values() if v is not MISSING]
    assert sorted(v.elements[0] for v in bound) == list(range(len(args)))


# matrix

def test_matrix_ncol_only_derives_rows(env):
    m = run("matrix(c(1,2,3,4,5,6,7,8,9), ncol = 3)", env)
    assert (m.nrow, m.ncol) == (3, 3)
    assert m.row(0) == (1, 4, 7)


def test_matrix_truncates_with_warning(env):
    with pytest.warns(FclWarning, match="exceeds matrix size"):
        m = run("matrix(c(1,2,3,4,5,6,7,8,9), nrow = 1, ncol = 3)", env)
    assert (m.nrow, m.ncol) == (1, 3) and m.data == (1, 2, 3)


def test_matrix_shapes(env):
    assert run("matrix(c(1,2,3))", env) == Matrix((1, 2, 3), 3, 1)
    assert run("matrix(c(1,2,3,4), nrow = 2, byrow = TRUE)", env) == Matrix((1, 3, 2, 4), 2, 2)
    with pytest.raises(ValueTypeError, match="not a multiple"):
        run("matrix(c(1,2,3,4), ncol = 3)", env)
    with pytest.raises(ValueTypeError, match="recycling"):
        run("matrix(c(1,2), nrow = 2, ncol = 2)", env)


@given(st.integers(1, 6), st.integers(0, 6))
def test_matrix_rows_from_length(ncol, nrow):
    length = ncol * nrow
    data = NumberVec(tuple(float(i) for i in range(length)))
    m = builtins.get("matrix").impl(data=data, nrow=MISSING, ncol=num(ncol), byrow=MISSING)
    assert (m.nrow, m.ncol) == (nrow, ncol)
    m1 = builtins.get("matrix").impl(data=data, nrow=MISSING, ncol=MISSING, byrow=MISSING)
    assert (m1.nrow, m1.ncol) == (length, 1)


# vectors and arithmetic

def test_c_names_and_types(env):
    assert run("c(a = 1, b = 2)", env) == num(1, 2, names=("a", "b"))
    assert run("c(1, TRUE)", env) == num(1, 1)
    assert run("c('a', 'b')", env) == strs("a", "b")
    assert run("c()", env) is NULL
    with pytest.raises(ValueTypeError):
        run("c(1, 'a')", env)


def test_arithmetic(env):
    assert run("c(1, 2, 3) * 2 + 1", env) == num(3, 5, 7)
    assert run("-c(1, 2)", env) == num(-1, -2)
    assert run("c(1, 2) / c(0, 4)", env) == num(math.inf, 0.5)
    assert run("c(1, 5) > 2", env) == bools(False, True)
    assert run("'a' == c('a', 'b')", env) == bools(True, False)
    with pytest.raises(ValueTypeError, match="recycling"):
        run("c(1, 2) + c(1, 2, 3)", env)


def test_sqrt_negative_warns(env):
    with pytest.warns(FclWarning, match="NaNs produced"):
        out = run("sqrt(-1)", env)
    assert math.isnan(out.elements[0])


def test_round(env):
    assert run("round(c(2.5, 3.14159), digits = 2)", env) == num(2.5, 3.14)
    assert run("round(2.5)", env) == num(2)


def test_head_variants(env, iris_env):
    assert run("head(c(a=1, b=2, c=3), n = 2)", env) == num(1, 2, names=("a", "b"))
    assert run("head(c(1, 2, 3), n = -1)", env) == num(1, 2)
    assert run("nrow(head(iris, 5))", iris_env) == num(5)
    m = run("head(matrix(c(1,2,3,4,5,6), ncol = 2), n = 2)", env)
    assert m == Matrix((1, 2, 4, 5), 2, 2)


# strings

def test_address_regex_builtins(env):
    x = StringVec(ADDRESS_INPUT)
    kept = apply(env.lookup("grep"), [(None, x), ("pattern", strs("<[^/]*>")), ("value", bools(True))])
    assert kept == StringVec(ADDRESS_INPUT[:2])
    assert apply(env.lookup("grep"), [(None, x), ("pattern", strs("<[^/]*>"))]) == num(1, 2)
    inner = apply(env.lookup("gsub"), [("pattern", strs(".*>(.*)<.*")),
                                       ("replacement", strs("\\1")), ("x", kept)])
    # Reference: Python's own \1 template expansion.
    assert inner.elements == tuple(re.sub(".*>(.*)<.*", r"\1", s) for s in ADDRESS_INPUT[:2])
    assert apply(env.lookup("trimws"), [(None, inner)]).elements == ADDRESS_OUTPUT


def test_gsub_backreferences(env):
    assert run("gsub('(\\\\w+) (\\\\w+)', '\\\\2 \\\\1', 'hello world')", env) == strs("world hello")
    assert run("gsub('[[:space:]]+', '_', 'a  b\\tc')", env) == strs("a_b_c")
    assert run("gsub('a', '\\\\\\\\', 'aba')", env) == strs("\\b\\")


def test_trimws(env):
    assert run("trimws(c('  a ', '\\tb\\n'))", env) == strs("a", "b")


# tables

def test_table_builtins(iris_env):
    assert run('grepl_cols(iris, "Sepal")', iris_env) == strs("Sepal.Length", "Sepal.Width")
    t = run('select_cols(iris, c("Petal.Length", "Sepal.Length"))', iris_env)
    assert list(t.columns) == ["Petal.Length", "Sepal.Length"]
    r = run("reorder_rows(iris, rev_index(nrow(iris)))", iris_env)
    assert r.columns["Sepal.Length"].elements[0] == 4.8
    assert run("rev_index(3)", iris_env) == num(3, 2, 1)


# summary

def test_summary_vector(env):
    s = run("summary(c(1, 2, 3, 4, 100))", env)
    assert s.names == builtins.SUMMARY_LABELS
    assert s.elements == (1, 2, 3, 22, 4, 100)


@given(st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=30))
def test_summary_quartiles_match_statistics(xs):
    s = builtins.get("summary").impl(object=NumberVec(tuple(xs))).elements
    q1, med, q3 = statistics.quantiles(xs, n=4, method="inclusive")
    assert s[0] == min(xs) and s[5] == max(xs)
    assert s[1] == pytest.approx(q1, rel=1e-9, abs=1e-9)
    assert s[2] == pytest.approx(med, rel=1e-9, abs=1e-9)
    assert s[4] == pytest.approx(q3, rel=1e-9, abs=1e-9)


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_summary_singleton(v):
    assert set(builtins.get("summary").impl(object=num(v)).elements) == {v}


def test_summary_table(iris_env):
    t = run("summary(iris)", iris_env)
    assert list(t.columns) == ["stat", "Sepal.Length", "Sepal.Width", "Petal.Length"]
    assert t.columns["stat"].elements == builtins.SUMMARY_LABELS


# printing

def test_format_numbers():
    assert format_numbers([HALF_LN_10]) == ["1.151293"]
    assert format_numbers([2.0, 3.0]) == ["2", "3"]
    assert format_numbers([1.5, 10.0]) == ["1.5", "10.0"]
    assert format_numbers([100000.0]) == ["1e+05"]
    assert format_numbers([0.0001]) == ["1e-04"]
    assert format_numbers([0.001]) == ["0.001"]
    assert format_numbers([math.nan, -math.inf]) == ["NaN", "-Inf"]


def test_format_values():
    assert format_value(num(HALF_LN_10)) == "[1] 1.151293"
    assert format_value(StringVec(ADDRESS_OUTPUT)) == '[1] "24 Hillhouse Ave." "New Haven"'
    assert format_value(Matrix((1.0, 2.0, 3.0), 1, 3)) == "     [,1] [,2] [,3]\n[1,]    1    2    3"
    assert format_value(num(1, 2, names=("a", "bb"))) == " a bb\n 1  2"
    assert format_value(NumberVec(())) == "numeric(0)"
    assert format_value(builtins.get("head")) == "function (x, n = 6) <builtin head>"


def test_long_vectors_wrap():
    text = format_value(num(*range(1, 31)))
    lines = text.splitlines()
    assert len(lines) > 1 and all(len(line) <= 80 for line in lines)
    assert lines[1].lstrip().startswith("[")


def test_value_invariants():
    with pytest.raises(ValueError):
        Matrix((1.0, 2.0), 3, 1)
    with pytest.raises(ValueError):
        Table({"a": num(1), "b": num(1, 2)})
    with pytest.raises(ValueError):
        NumberVec((1.0,), ("a", "b"))

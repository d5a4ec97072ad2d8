import random
import statistics
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from fcl import compose, run
from fcl.compose import FcBuild, INTERNAL_NAME, UNNAMED_MESSAGE, internal_name
from fcl.errors import FcError, FclWarning, PipeError, ValueTypeError
from fcl.runtime.environment import Environment
from fcl.runtime.evaluator import call_value
from fcl.runtime.printing import format_value
from fcl.runtime.values import Closure, Matrix, StringVec, num
from fcl.syntax import deparse_function, free_symbols

from corpus import ADDRESS_INPUT, ADDRESS_OUTPUT, SNIPPETS
from pool import POOLS, bind_pool, random_input, values_close


def shown(f) -> str:
    return deparse_function(f.params, f.body)


@pytest.mark.parametrize("source, expected", [
    ("fc(head, n=50)", "function (x) head(x, n = 50)"),
    ("fc(matrix, data=data, ncol=3)", "function (data) matrix(data = data, ncol = 3)"),
    ("fc(summary, object=fc(head, n = 50)(object))",
     "function (object) summary(object = internal_anon_func(object))"),
    ("fc(head, n=50) %>% summary",
     "function (object) summary(object = internal_anon_func(object))"),
    ("fc(log, x=sqrt(x))", "function (x) log(x = sqrt(x))"),
    ("fc(head, n=round(nrow(x)/2))", "function (x) head(x, n = round(nrow(x)/2))"),
    ("fc(sqrt, x=x) %>% fc(log, x=x)", "function (x) internal_anon_func_2(x = internal_anon_func(x))"),
    ("fc(matrix, ncol = 3)", "function () matrix(ncol = 3)"),
    ("fc(head, n = k)", "function (x, k) head(x, n = k)"),
    ("fc(function(a, b) a - b, b = 1)", "function (a) internal_anon_func(a, b = 1)"),
])
def test_deparse_examples(env, source, expected):
    assert shown(run(source, env)) == expected


def test_nested_composition_bound_in_closure_env(env):
    f = run("fc(summary, object=fc(head, n = 50)(object))", env)
    inner = f.env.bindings[INTERNAL_NAME]
    assert shown(inner) == "function (x) head(x, n = 50)"
    assert set(f.env.bindings) == {INTERNAL_NAME}
    assert f.env.parent is env


def test_symbol_operand_keeps_caller_env(env):
    f = run("fc(head, n=50)", env)
    assert f.env is env
    assert not any(name.startswith(INTERNAL_NAME) for name in env.bindings)


def test_matrix_default_omission(env):
    m = run("fc(matrix, data=data, ncol=3)(seq(1, 9))", env)
    assert isinstance(m, Matrix) and (m.nrow, m.ncol) == (3, 3)
    assert m.row(0) == (1, 4, 7)


def test_matrix_with_explicit_default_warns(env):
    with pytest.warns(FclWarning):
        m = run("matrix(seq(1, 9), nrow = 1, ncol = 3)", env)
    assert (m.nrow, m.ncol) == (1, 3)


def test_closure_default_applies_when_omitted(env):
    run("g <- function(x, k = 10) x + k", env)
    assert run("fc(g, x = y)(1)", env) == num(11)


def test_unnamed_operand_message(env):
    with pytest.raises(FcError) as info:
        run("fc(subset, Sepal.Length > 5)", env)
    assert info.value.message == UNNAMED_MESSAGE == "All parameter arguments must be named."


def test_lambda_named_argument_rejected(env):
    with pytest.raises(FcError, match="anonymous function"):
        run("fc(sqrt, x = function(y) y)", env)


def test_called_lambda_inside_argument_is_kept(env):
    f = run("fc(head, x = (function(v) seq(1, v))(m), n = 2)", env)
    assert shown(f) == "function (m) head(x = (function (v) seq(1, v))(m), n = 2)"
    assert call_value(f, num(5)) == num(1, 2)


def test_unknown_named_argument_rejected(env):
    with pytest.raises(FcError, match="not a parameter"):
        run("fc(head, m = 3)", env)


def test_variadic_function_accepts_any_name(env):
    f = run("fc(c, first = a, second = 2)", env)
    assert shown(f) == "function (a) c(first = a, second = 2)"


@pytest.mark.parametrize("source", ["fc(3, n = 1)", "fc(c(1, 2), n = 1)", "fc(sqrt(4), x = 1)"])
def test_bad_first_operand(env, source):
    with pytest.raises(ValueTypeError):
        run(source, env)


def test_internal_name_sequence():
    build = FcBuild(Environment())
    build.fresh_env()
    names = [internal_name(build) for _ in range(3)]
    assert names == [INTERNAL_NAME, f"{INTERNAL_NAME}_2", f"{INTERNAL_NAME}_3"]


def test_internal_name_skips_existing_binding(env):
    run("internal_anon_func <- 1", env)
    f = run("fc(head, n = 50) %>% summary", env)
    assert shown(f) == "function (object) summary(object = internal_anon_func_2(object))"
    assert run("internal_anon_func", env) == num(1)


def test_two_sub_compositions_get_distinct_names(env):
    f = run("fc(c, a = fc(head, n = 1)(x), b = fc(head, n = 2)(x))", env)
    assert shown(f) == "function (x) c(a = internal_anon_func(x), b = internal_anon_func_2(x))"
    assert call_value(f, num(7, 8, 9)).elements == (7, 7, 8)


def test_callee_name_shadowed_by_parameter(env):
    f = run("fc(c, a = c)", env)
    assert call_value(f, num(4)).elements == (4,)


def test_promoted_formal_passed_by_name_after_gap(env):
    run("g <- function(a, b = 1, d) c(a, b, d)", env)
    f = run("fc(g, a = 0)", env)
    assert shown(f) == "function (d) g(d = d, a = 0)"
    assert call_value(f, num(5)) == num(0, 1, 5)


def test_signature_order_and_distinct(env):
    f = run("fc(matrix, data = c(u, v, u), nrow = v, ncol = w)", env)
    assert [p.name for p in f.params] == ["u", "v", "w"]


def test_free_symbols_of_body_resolvable(env):
    f = run("fc(summary, object=fc(head, n = 50)(object))", env)
    params = {p.name for p in f.params}
    for name in free_symbols(f.body):
        assert name in params or f.env.has(name)


def test_signature_determinism(env):
    a = run("fc(c, a = fc(head, n = 1)(x), b = fc(head, n = 2)(x))", env)
    b = run("fc(c, a = fc(head, n = 1)(x), b = fc(head, n = 2)(x))", env)
    assert a.params == b.params and a.body == b.body
    assert list(a.env.bindings) == list(b.env.bindings)
    for name in a.env.bindings:
        assert shown(a.env.bindings[name]) == shown(b.env.bindings[name])


def test_sub_compositions_evaluated_once(env, monkeypatch):
    calls = []
    original = compose.fc

    def counting(*args):
        calls.append(1)
        return original(*args)

    monkeypatch.setattr(compose, "fc", counting)
    run("s <- fc(summary, object = fc(head, n = 2)(object))", env)
    built = len(calls)
    for _ in range(3):
        run("s(c(1, 2, 3))", env)
    assert built == 2 and len(calls) == built


# pipe

def test_pipe_address(env):
    run("x <- c(" + ", ".join(f'"{s}"' for s in ADDRESS_INPUT) + ")", env)
    run(next(s for s in SNIPPETS if s.startswith("search_trim_fc_pipe")), env)
    assert run("search_trim_fc_pipe(x)", env) == StringVec(ADDRESS_OUTPUT)


def test_pipe_with_identity_lambda(env):
    f = run("sqrt %>% function(x) x", env)
    assert call_value(f, num(16, 9)) == num(4, 3)


def test_pipe_parameter_choice(env):
    assert compose.pipe_parameter(env.lookup("summary")) == "object"
    assert compose.pipe_parameter(env.lookup("matrix")) == "data"
    run("g <- function(a = 1, b) b", env)
    assert compose.pipe_parameter(env.lookup("g")) == "b"


def test_pipe_data_lhs_rejected(env):
    with pytest.raises(PipeError, match="left"):
        run("c(1, 2) %>% sqrt", env)


def test_pipe_data_rhs_rejected(env):
    with pytest.raises(PipeError, match="right"):
        run("sqrt %>% 3", env)


def test_pipe_rhs_without_formals(env):
    with pytest.raises(PipeError, match="parameter"):
        run("sqrt %>% function() 1", env)


def test_pipe_lhs_name_equal_to_parameter(env):
    run("x <- function(v) v * 2", env)
    f = run("x %>% sqrt", env)
    assert call_value(f, num(8)) == num(4)


def test_pipe_stores_no_function_list(env):
    f = run("sqrt %>% abs %>% fc(head, n = 1)", env)
    assert isinstance(f, Closure)
    # Only the two non-symbol operands of the outer pipe are stored.
    assert len(f.env.bindings) == 2
    assert all(isinstance(v, Closure) for v in f.env.bindings.values())
    assert all(name.startswith(INTERNAL_NAME) for name in f.env.bindings)


def test_sepal_compositions(iris_env):
    for s in SNIPPETS:
        if "sepal" in s:
            run(s, iris_env)
    expected = run("summary(get_random_sepal_base(iris))", iris_env)
    for name in ("get_sepal1", "get_sepal2", "get_sepal1_pipe", "get_sepal2_pipe"):
        assert run(f"{name}(iris)", iris_env) == expected
    # Independent check: the last ten rows in reverse order.
    lengths = list(reversed(run("iris", iris_env).columns["Sepal.Length"].elements))[:10]
    rendered = format_value(expected)
    assert f"{statistics.mean(lengths):.3f}" in rendered
    assert f"{statistics.median(lengths):.3f}" in rendered


# properties over the stage pool

def _pipeline(env, labels):
    fs = [env.lookup(label) for label in labels]
    return fs


def _nested(fs, x):
    for f in fs:
        x = call_value(f, x)
    return x


pipeline_seeds = st.tuples(
    st.sampled_from(sorted(POOLS)), st.integers(1, 6), st.integers(0, 2**32 - 1))


@settings(max_examples=60, deadline=None)
@given(pipeline_seeds)
def test_pipe_is_composition(case):
    kind, depth, seed = case
    rng = random.Random(seed)
    env = _fresh_env(kind)
    labels = [rng.choice(sorted(POOLS[kind])) for _ in range(depth)]
    composed = run(" %>% ".join(labels), env) if depth > 1 else env.lookup(labels[0])
    x = random_input(rng, kind)
    with warnings.catch_warnings():
        warnings.simplefilter("error", FclWarning)
        assert values_close(call_value(composed, x), _nested(_pipeline(env, labels), x))


@settings(max_examples=40, deadline=None)
@given(pipeline_seeds)
def test_pipe_association(case):
    kind, _, seed = case
    rng = random.Random(seed)
    env = _fresh_env(kind)
    f, g, h = (rng.choice(sorted(POOLS[kind])) for _ in range(3))
    left = run(f"({f} %>% {g}) %>% {h}", env)
    right = run(f"{f} %>% ({g} %>% {h})", env)
    for _ in range(3):
        x = random_input(rng, kind)
        assert values_close(call_value(left, x), call_value(right, x))


def _fresh_env(kind):
    from fcl import base_environment

    env = base_environment()
    bind_pool(env, kind)
    return env

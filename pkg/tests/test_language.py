"""Tests for the specification parser, macro expansion and the task graph."""

import pytest

from polycheck import (
    build_task_graph,
    desugar,
    elaborate,
    parse_spec,
    print_formula,
    print_program,
)
from polycheck.errors import (
    ArityMismatchError,
    ImportCycleError,
    RecursionDetectedError,
    RedefinedNameError,
    SpecSyntaxError,
    UnknownCommandError,
    UnknownIdentifierError,
)
from polycheck.formulas import And, Atom, Box, Not, Or, Through, Top, children
from polycheck.parser import App, Ident, Let, Load, OrE, Save, load_program

from corpus import SEGMENTATION_SPEC, maze_spec


def let_body(text, name=None):
    program = parse_spec(text)
    lets = {c.name: c for c in program.lets()}
    return lets[name or next(iter(lets))]


def expand(text, target):
    """Desugar the named let of a program; zero-arg lets expand directly."""
    program = parse_spec(text)
    defs = {}
    for cmd in program.lets():
        defs[cmd.name] = cmd
    return desugar(Ident(target), defs)


class TestParser:
    def test_reach_definition_shape(self):
        cmd = let_body("let reach(x,y) = x | through(y,x)")
        assert cmd == Let(
            "reach",
            ("x", "y"),
            OrE(Ident("x", 1, 18), App("through", (Ident("y", 1, 30), Ident("x", 1, 32)), 1, 22)),
            1,
        )

    def test_save_command(self):
        program = parse_spec('save "blackOrWhite" blackOrWhite')
        (cmd,) = program.commands
        assert isinstance(cmd, Save)
        assert cmd.label == "blackOrWhite"
        assert cmd.body == Ident("blackOrWhite", 1, 21)

    def test_load_with_name(self):
        program = parse_spec('load model = "mazeModel.json"')
        (cmd,) = program.commands
        assert cmd == Load("mazeModel.json", "model", 1)

    def test_malformed_infix(self):
        with pytest.raises(SpecSyntaxError) as err:
            parse_spec("let a = b | & c")
        assert err.value.line == 1

    def test_unknown_command(self):
        with pytest.raises(UnknownCommandError):
            parse_spec("frobnicate x")

    def test_comments_and_multiline(self):
        program = parse_spec(
            "// header comment\n"
            "let a = ap(\"x\") &\n"
            "        ap(\"y\")  // trailing\n"
            'save "a" a\n'
        )
        assert len(program.commands) == 2

    def test_precedence(self):
        cmd = let_body('let f = !ap("a") & ap("b") | ap("c")')
        # parses as ((!a & b) | c)
        assert isinstance(cmd.body, OrE)

    def test_precedence_semantics(self):
        defs = {}
        for c in parse_spec('let f = !ap("a") & ap("b") | ap("c")').lets():
            defs[c.name] = c
        f = desugar(Ident("f"), defs)
        assert f == Or(And(Not(Atom("a")), Atom("b")), Atom("c"))

    def test_left_associative(self):
        defs = {c.name: c for c in parse_spec('let f = ap("a") | ap("b") | ap("c")').lets()}
        f = desugar(Ident("f"), defs)
        assert f == Or(Or(Atom("a"), Atom("b")), Atom("c"))

    def test_error_position(self):
        with pytest.raises(SpecSyntaxError) as err:
            parse_spec("let a = ap(\n)")
        assert (err.value.line, err.value.column) == (2, 1)

    def test_unterminated_string(self):
        with pytest.raises(SpecSyntaxError):
            parse_spec('save "oops')

    def test_maze_spec_parses(self):
        program = parse_spec(maze_spec())
        names = [c.name for c in program.lets()]
        assert names[:5] == ["green", "white", "black", "red", "corridor"]
        assert len(program.saves()) == 8

    def test_segmentation_spec_elaborates(self):
        # exercises function-form not(...) and deeply nested user lets
        _, saves = elaborate(parse_spec(SEGMENTATION_SPEC))
        assert [label for label, _ in saves] == ["organ", "selectedVessel"]
        graph = build_task_graph(saves)
        assert len(graph) == distinct_subformulas(saves)

    def test_not_builtin(self):
        f = expand('let f = not(ap("a"))', "f")
        assert f == Not(Atom("a"))


class TestRoundTrip:
    @pytest.mark.parametrize(
        "text",
        [
            maze_spec(),
            'let f(x) = !(x | ap("a")) & x\nsave "f" f(ap("b"))',
            'load "m.json"\nsave "t" through(top, !bot)',
        ],
    )
    def test_parse_print_parse(self, text):
        once = parse_spec(text)
        printed = print_program(once)
        again = parse_spec(printed)
        assert print_program(again) == printed
        # and the elaborated formulas agree
        if not once.loads():
            _, saves1 = elaborate(once)
            _, saves2 = elaborate(again)
            assert saves1 == saves2


class TestDesugar:
    def test_through_is_core(self):
        f = expand('let f = through(ap("a"), ap("b"))', "f")
        assert f == Through(Atom("a"), Atom("b"))

    def test_diamond(self):
        f = expand('let f = diamond(ap("a"))', "f")
        assert f == Not(Box(Not(Atom("a"))))

    def test_rho(self):
        f = expand('let f = rho(ap("g"), ap("f"))', "f")
        assert f == Or(Atom("g"), Through(Atom("f"), Atom("g")))

    def test_sur_expansion(self):
        f = expand('let f = sur(ap("x"), ap("y"))', "f")
        x, y = Atom("x"), Atom("y")
        outside = Not(Or(x, y))
        assert f == And(x, Not(Or(outside, Through(Not(y), outside))))

    def test_grow(self):
        f = expand('let f = grow(ap("a"), ap("b"))', "f")
        a, b = Atom("a"), Atom("b")
        assert f == Or(a, And(b, Or(a, Through(b, a))))

    def test_user_let_expansion(self):
        f = expand(
            'let q = ap("q")\nlet w(x) = x & !q\nlet f = w(q | top)', "f"
        )
        q = Atom("q")
        assert f == And(Or(q, Top()), Not(q))

    def test_parameters_shadow_outer_names(self):
        f = expand(
            'let a = ap("outer")\nlet pick(a) = a\nlet f = pick(ap("inner"))', "f"
        )
        assert f == Atom("inner")

    def test_shadowing_is_capture_avoiding(self):
        # the argument mentions `a`, the callee binds a parameter named `a`:
        # the argument must keep the caller's meaning
        f = expand(
            'let a = ap("outer")\n'
            "let twist(a) = a & a\n"
            "let f = twist(a | a)",
            "f",
        )
        outer = Or(Atom("outer"), Atom("outer"))
        assert f == And(outer, outer)

    def test_lets_may_shadow_builtins(self):
        f = expand('let reach(x,y) = x | through(y,x)\nlet f = reach(ap("a"), ap("b"))', "f")
        assert f == Or(Atom("a"), Through(Atom("b"), Atom("a")))

    def test_unknown_identifier(self):
        with pytest.raises(UnknownIdentifierError):
            expand("let f = nope", "f")

    def test_use_before_definition(self):
        with pytest.raises(UnknownIdentifierError):
            elaborate(parse_spec('save "f" later\nlet later = top'))

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatchError):
            expand('let w(x) = x\nlet f = w(top, top)', "f")
        with pytest.raises(ArityMismatchError):
            expand("let f = box(top, top)", "f")

    def test_recursion_detected(self):
        with pytest.raises(RecursionDetectedError):
            elaborate(parse_spec("let f(x) = f(x)\nsave \"f\" f(top)"))

    def test_redefined_let(self):
        with pytest.raises(RedefinedNameError):
            elaborate(parse_spec("let a = top\nlet a = top"))

    def test_redefined_save_label(self):
        with pytest.raises(RedefinedNameError):
            elaborate(parse_spec('save "t" top\nsave "t" top'))

    def test_ap_requires_string(self):
        with pytest.raises(SpecSyntaxError):
            expand("let f = ap(top)", "f")


class TestImports:
    def test_import_resolves_relative(self, tmp_path):
        lib = tmp_path / "lib"
        lib.mkdir()
        (lib / "ops.spec").write_text("let yes = top\n")
        main = tmp_path / "main.spec"
        main.write_text('import "lib/ops.spec"\nsave "yes" yes\n')
        program = load_program(main)
        _, saves = elaborate(program)
        assert saves == [("yes", Top())]

    def test_import_cycle(self, tmp_path):
        (tmp_path / "a.spec").write_text('import "b.spec"\n')
        (tmp_path / "b.spec").write_text('import "a.spec"\n')
        with pytest.raises(ImportCycleError):
            load_program(tmp_path / "a.spec")

    def test_load_path_resolved_relative_to_spec(self, tmp_path):
        sub = tmp_path / "sub"
        sub.mkdir()
        spec = sub / "run.spec"
        spec.write_text('load "model.json"\nsave "t" top\n')
        program = load_program(spec)
        (load_cmd,) = program.loads()
        assert load_cmd.path == str((sub / "model.json").resolve())


def distinct_subformulas(saves):
    """Independent node recount: canonical prints of all subtrees."""
    seen = set()

    def walk(f):
        seen.add(print_formula(f))
        for child in children(f):
            walk(child)

    for _, formula in saves:
        walk(formula)
    return len(seen)


class TestTaskGraph:
    def test_shared_subformula_added_once(self):
        program = parse_spec(
            'let r = ap("r")\nlet g = ap("g")\n'
            'save "a" through(r, g)\n'
            'save "b" r & through(r, g)\n'
        )
        _, saves = elaborate(program)
        graph = build_task_graph(saves)
        through_nodes = [n for n in graph.nodes if n.kind == "through"]
        assert len(through_nodes) == 1
        nid = graph.nodes.index(through_nodes[0])
        assert sum(nid in n.children for n in graph.nodes) == 1  # the `and` node
        assert dict(graph.save_roots)["a"] == nid

    def test_single_atom_save(self):
        _, saves = elaborate(parse_spec('save "t" ap("G")'))
        graph = build_task_graph(saves)
        assert len(graph) == 1

    def test_acyclic_children_precede_parents(self):
        _, saves = elaborate(parse_spec(maze_spec()))
        graph = build_task_graph(saves)
        for nid, node in enumerate(graph.nodes):
            for child in node.children:
                assert child < nid

    def test_maze_spec_node_count_pinned(self):
        # one run checking the three maze properties together; the original
        # engine reported 34 tasks for this workload, our core counts 28
        # distinct subformulas (it has no load/save/let bookkeeping nodes)
        text = maze_spec(extra_saves=False) + (
            'save "connWG" connWG\n'
            'save "connRWG" connRWG\n'
            'save "whiteNoGreen" whiteNoGreen\n'
        )
        _, saves = elaborate(parse_spec(text))
        graph = build_task_graph(saves)
        assert len(graph) == 28
        assert distinct_subformulas(saves) == len(graph)

    def test_maze_single_property_counts_pinned(self):
        expected = {"connWG": 18, "connRWG": 25, "whiteNoGreen": 18}
        for label, count in expected.items():
            text = maze_spec(extra_saves=False).replace(
                'save "blackOrWhite" blackOrWhite', f'save "{label}" {label}'
            )
            _, saves = elaborate(parse_spec(text))
            graph = build_task_graph(saves)
            assert len(graph) == count, label
            assert distinct_subformulas(saves) == count

    def test_reparse_gives_identical_count(self):
        text = maze_spec()
        a = build_task_graph(elaborate(parse_spec(text))[1])
        b = build_task_graph(elaborate(parse_spec(print_program(parse_spec(text))))[1])
        assert len(a) == len(b)
        assert a.nodes == b.nodes

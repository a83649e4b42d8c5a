"""
Tests for dsl app.
"""
import math

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.states.factories import PARAMETER_SETS, all_built_states
from apps.states.models import OperatorEnsemble, ProductKet, StateFamily
from apps.states.services import build_family_state, superposition
from config.exceptions import DslParseError, StateError
from .lowering import lower, parse_state, render
from .parser import parse, tokenize


def family_text(family, values):
    """DSL text for a built-in family."""
    if family == StateFamily.FACTORIZABLE:
        return str(values)
    coherent = 'coherent' in family
    first = ProductKet.coherent(*values) if coherent else ProductKet.fock(*values)
    second = first.rotated(1)
    if family.startswith('sep'):
        return f'mix 0.5: {first}; 0.5: {second}'
    return f'{first} + {second}'


class TokenizeTests(SimpleTestCase):
    """Tests for tokenize."""

    def test_token_kinds(self):
        kinds = [token.kind for token in tokenize('mix 0.5: |c:1-2i, 3>')]
        self.assertEqual(kinds, ['MIX', 'NUMBER', ':', '|', 'C', ':', 'NUMBER', '-', 'NUMBER', 'I', ',', 'NUMBER', '>', 'EOF'])

    def test_whitespace_is_insignificant(self):
        self.assertTrue(parse_state('|1,0>+|0,1>').isclose(parse_state(' | 1 ,\n0 >  +\t|0, 1>')))

    def test_unknown_character(self):
        with self.assertRaises(DslParseError) as ctx:
            tokenize('|1,0> & |0,1>')
        self.assertEqual(ctx.exception.code, 'lexical_error')
        self.assertEqual(ctx.exception.offset, 6)
        self.assertEqual((ctx.exception.line, ctx.exception.column), (1, 7))

    def test_unknown_word(self):
        with self.assertRaises(DslParseError) as ctx:
            tokenize('mixed 1: |0>')
        self.assertEqual(ctx.exception.code, 'lexical_error')
        self.assertEqual(ctx.exception.offset, 0)

    def test_line_and_column_on_later_line(self):
        with self.assertRaises(DslParseError) as ctx:
            parse('|1,0>\n + |0,1>\n + $')
        self.assertEqual((ctx.exception.line, ctx.exception.column), (3, 4))


class ParseTests(SimpleTestCase):
    """Tests for parse."""

    def test_mixture_example(self):
        """Test the separable number mixture text."""
        expr = parse('mix 0.5: |1,0>; 0.5: |0,1>')
        self.assertTrue(expr.is_mixture)
        self.assertEqual(expr.mode_count, 2)
        self.assertEqual(expr.kind, 'fock')
        self.assertEqual([p for p, _ in expr.components], [0.5, 0.5])
        self.assertTrue(lower(expr).isclose(build_family_state(StateFamily.SEP_NUMBER2, (1, 0))))

    def test_grouped_superposition(self):
        """Test (|1,0> + |0,1>) has coefficients 2^-1/2."""
        rho = parse_state('(|1,0> + |0,1>)')
        self.assertEqual(len(rho), 4)
        for term in rho.terms:
            self.assertAlmostEqual(term.weight, 0.5, places=15)

    def test_coherent_superposition(self):
        """Test |c:1, c:0> + |c:0, c:1> gets N^2 = 1/(2 + 2 e^-1)."""
        rho = parse_state('|c:1, c:0> + |c:0, c:1>')
        self.assertEqual(len(rho), 4)
        expected = 1 / (2 + 2 * math.exp(-1))
        for term in rho.terms:
            self.assertAlmostEqual(term.weight, expected, delta=1e-14)
        self.assertTrue(rho.isclose(build_family_state(StateFamily.ENT_COHERENT2, (1, 0))))

    def test_single_ket(self):
        rho = parse_state('|2,0,1>')
        self.assertEqual(len(rho), 1)
        self.assertEqual(rho.terms[0].weight, 1)
        self.assertEqual(rho.terms[0].ket, ProductKet.fock(2, 0, 1))

    def test_complex_literals(self):
        """Test a+bi, bi and a bare i."""
        cases = {
            '-0.3-0.2i*|1> + |0>': -0.3 - 0.2j,
            '2i*|1> + |0>': 2j,
            'i*|1> + |0>': 1j,
            '-i*|1> + |0>': -1j,
            '1+i*|1> + |0>': 1 + 1j,
        }
        for text, coefficient in cases.items():
            with self.subTest(text=text):
                rho = parse_state(text)
                expected = superposition([coefficient, 1.0 + 0j], [ProductKet.fock(1), ProductKet.fock(0)])
                self.assertTrue(rho.isclose(expected, tol=1e-15))

    def test_coherent_slot_amplitudes(self):
        expr = parse('|c:1+2i, c:-0.5i, c:3>')
        ket = expr.components[0][1].ket
        self.assertEqual([slot.amplitude for slot in ket.modes], [1 + 2j, -0.5j, 3 + 0j])

    def test_subtraction_and_division(self):
        """Test (|1> - |0>)/2 renormalizes to the minus state."""
        rho = parse_state('(|1> - |0>)/2')
        weights = rho.weights()
        self.assertAlmostEqual(weights[(ProductKet.fock(0), ProductKet.fock(1))], -0.5, places=15)
        self.assertAlmostEqual(weights[(ProductKet.fock(1), ProductKet.fock(1))], 0.5, places=15)

    def test_scaled_group(self):
        """Test a coefficient in front of a parenthesized sum distributes."""
        rho = parse_state('2*(|1> + |0>) + |0>')
        expected = superposition([2.0 + 0j, 3.0 + 0j], [ProductKet.fock(1), ProductKet.fock(0)])
        self.assertTrue(rho.isclose(expected, tol=1e-15))

    def test_repeated_ket_merges(self):
        self.assertTrue(parse_state('|1,0> + |1,0>').isclose(parse_state('|1,0>')))

    def test_mode_mismatch(self):
        with self.assertRaises(DslParseError) as ctx:
            parse('|1,0> + |0,1,0>')
        self.assertEqual(ctx.exception.code, 'dsl_mode_mismatch')
        self.assertEqual(ctx.exception.offset, 8)

    def test_kind_mismatch_across_kets(self):
        with self.assertRaises(DslParseError) as ctx:
            parse('mix 0.5: |1,0>; 0.5: |c:1, c:0>')
        self.assertEqual(ctx.exception.code, 'dsl_kind_mismatch')
        self.assertEqual(ctx.exception.offset, 21)

    def test_kind_mismatch_within_ket(self):
        with self.assertRaises(DslParseError) as ctx:
            parse('|1, c:0>')
        self.assertEqual(ctx.exception.code, 'dsl_kind_mismatch')
        self.assertEqual(ctx.exception.offset, 4)

    def test_probability_sum(self):
        with self.assertRaises(DslParseError) as ctx:
            parse('mix 0.5: |1,0>; 0.4: |0,1>')
        self.assertEqual(ctx.exception.code, 'probability_sum')
        self.assertEqual(ctx.exception.offset, 0)

    def test_probability_within_tolerance(self):
        parse('mix 0.3333333333: |1,0>; 0.6666666667: |0,1>')

    def test_nonpositive_probability(self):
        with self.assertRaises(DslParseError) as ctx:
            parse('mix 0: |1,0>; 1: |0,1>')
        self.assertEqual(ctx.exception.code, 'probability_sum')

    def test_syntax_errors_carry_expected_tokens(self):
        with self.assertRaises(DslParseError) as ctx:
            parse('|1,0')
        self.assertEqual(ctx.exception.code, 'syntax_error')
        self.assertEqual(ctx.exception.offset, 4)
        self.assertEqual(ctx.exception.expected, ("','", "'>'"))
        self.assertIn('1:5', str(ctx.exception))

    def test_fractional_occupation(self):
        with self.assertRaises(DslParseError) as ctx:
            parse('|1.5>')
        self.assertEqual(ctx.exception.code, 'syntax_error')
        self.assertEqual(ctx.exception.offset, 1)

    def test_empty_input(self):
        with self.assertRaises(DslParseError) as ctx:
            parse('')
        self.assertEqual(ctx.exception.offset, 0)

    def test_trailing_garbage(self):
        with self.assertRaises(DslParseError) as ctx:
            parse('|1> |0>')
        self.assertEqual(ctx.exception.offset, 4)

    def test_deep_nesting(self):
        with self.assertRaises(DslParseError):
            parse('(' * 500 + '|0>' + ')' * 500)

    def test_zero_norm(self):
        with self.assertRaises(DslParseError) as ctx:
            parse_state('|1,0> - |1,0>')
        self.assertEqual(ctx.exception.code, 'zero_norm')

    @given(st.text(alphabet='|>,+-*/():; 0123456789.cimx\n', max_size=60))
    @settings(max_examples=50, deadline=None)
    def test_error_positions_within_input(self, text):
        """Test any failure points inside the input."""
        try:
            parse(text)
        except DslParseError as exc:
            self.assertGreaterEqual(exc.offset, 0)
            self.assertLessEqual(exc.offset, len(text))
            self.assertGreaterEqual(exc.line, 1)
            self.assertGreaterEqual(exc.column, 1)


class FamilyEquivalenceTests(SimpleTestCase):
    """Every built-in family has a DSL spelling."""

    def test_family_texts(self):
        for family, values, rho in all_built_states():
            with self.subTest(family=family, values=values):
                self.assertTrue(parse_state(family_text(family, values)).isclose(rho, tol=1e-12))

    def test_all_families_covered(self):
        self.assertEqual(set(PARAMETER_SETS) | {StateFamily.FACTORIZABLE}, set(StateFamily))


class RenderTests(SimpleTestCase):
    """Tests for render."""

    def test_round_trip_built_states(self):
        for family, values, rho in all_built_states():
            with self.subTest(family=family, values=values):
                self.assertTrue(parse_state(render(rho)).isclose(rho, tol=1e-12))

    def test_pure_state_renders_without_mix(self):
        text = render(build_family_state(StateFamily.ENT_NUMBER2, (1, 0)))
        self.assertNotIn('mix', text)

    def test_mixed_state_renders_as_mixture(self):
        text = render(build_family_state(StateFamily.SEP_NUMBER3, (0, 1, 2)))
        self.assertTrue(text.startswith('mix '))
        self.assertEqual(parse(text).mode_count, 3)

    def test_rejects_non_positive_operator(self):
        rho = OperatorEnsemble.dyad(ProductKet.fock(1), weight=-1.0)
        with self.assertRaises(StateError):
            render(rho)

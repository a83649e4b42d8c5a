"""
Tests for states app.
"""
import cmath
import math

from django.test import SimpleTestCase

from config.exceptions import StateError
from .factories import (
    CoherentKetFactory, DriveParamsFactory, DyadEnsembleFactory, FockKetFactory, all_built_states,
)
from .models import Coherent, Fock, Normalization, OperatorEnsemble, ProductKet, StateFamily, Term
from .serializers import ensemble_from_data, ensemble_to_data
from .services import (
    build_family_state, overlap, partial_trace, reduced_state, slot_overlap, superposition,
    tensor_product, trace,
)


class OverlapTests(SimpleTestCase):
    """Tests for overlap."""

    def test_fock_ket_with_itself(self):
        """Test <10|10> = 1 and <10|01> = 0."""
        ket = FockKetFactory()
        self.assertEqual(overlap(ket, ket), 1)
        self.assertEqual(overlap(ket, FockKetFactory(occupations=(0, 1))), 0)

    def test_single_mode_coherent(self):
        """Test <1|0> = exp(-1/2)."""
        value = overlap(ProductKet.coherent(1), ProductKet.coherent(0))
        self.assertAlmostEqual(value, 0.606530660, places=9)

    def test_two_mode_coherent(self):
        """Test <1,0|0,1> = exp(-1)."""
        value = overlap(CoherentKetFactory(), CoherentKetFactory(amplitudes=(0, 1)))
        self.assertAlmostEqual(value, 0.367879441, places=9)

    def test_complex_overlap_is_conjugate_symmetric(self):
        """Test <a|b> = <b|a>*."""
        a = ProductKet.coherent(0.3 + 0.1j, -0.7j)
        b = ProductKet.coherent(-0.2, 1 + 1j)
        self.assertAlmostEqual(overlap(a, b), overlap(b, a).conjugate(), places=14)

    def test_mismatches_are_rejected(self):
        """Test mode count and kind mismatches raise."""
        with self.assertRaises(StateError):
            overlap(FockKetFactory(), FockKetFactory(occupations=(1, 0, 0)))
        with self.assertRaises(StateError):
            overlap(FockKetFactory(), CoherentKetFactory())

    def test_mixed_kind_ket_is_rejected(self):
        """Test a ket cannot mix Fock and coherent slots."""
        with self.assertRaises(StateError):
            ProductKet((Fock(1), Coherent(0.5)))


class BuildFamilyStateTests(SimpleTestCase):
    """Tests for build_family_state."""

    def test_separable_number_state(self):
        """Test sep_number2(1, 0) = 1/2 |10><10| + 1/2 |01><01|."""
        rho = build_family_state(StateFamily.SEP_NUMBER2, (1, 0))
        expected = OperatorEnsemble.from_terms([
            Term(0.5, ProductKet.fock(1, 0), ProductKet.fock(1, 0)),
            Term(0.5, ProductKet.fock(0, 1), ProductKet.fock(0, 1)),
        ])
        self.assertTrue(rho.isclose(expected))
        self.assertEqual(len(rho), 2)

    def test_entangled_number_state_has_four_half_dyads(self):
        """Test ent_number2 weights are 1/2 on all four dyads."""
        rho = build_family_state(StateFamily.ENT_NUMBER2, (1, 0))
        self.assertEqual(len(rho), 4)
        for term in rho:
            self.assertAlmostEqual(term.weight, 0.5, places=15)

    def test_entangled_coherent_normalization(self):
        """Test N^2 = [2 + 2 exp(-|A1 - A2|^2)]^-1 for A = (1, 0)."""
        rho = build_family_state(StateFamily.ENT_COHERENT2, (1, 0))
        norm_sq = 1 / (2 + 2 * math.exp(-1))
        self.assertAlmostEqual(norm_sq, 0.365529, places=6)
        self.assertEqual(len(rho), 4)
        for term in rho:
            self.assertAlmostEqual(term.weight, norm_sq, places=14)

    def test_factorizable_is_single_dyad(self):
        """Test factorizable gives one dyad with weight 1."""
        ket = CoherentKetFactory(amplitudes=(0.2, -0.4j))
        rho = build_family_state(StateFamily.FACTORIZABLE, ket)
        self.assertEqual(len(rho), 1)
        self.assertEqual(rho.terms[0].weight, 1)

    def test_every_family_has_unit_trace_and_is_hermitian(self):
        """Test trace 1 and Hermitian pairing for all built states."""
        for family, values, rho in all_built_states():
            with self.subTest(family=family, values=values):
                self.assertAlmostEqual(abs(trace(rho) - 1), 0, delta=1e-12)
                self.assertTrue(rho.is_hermitian())

    def test_tripartite_normalization_uses_product_of_overlaps(self):
        """Test N'^2 = [2 + 2 Re(tau_12 tau_23 tau_31)]^-1."""
        amplitudes = (0, 1, math.sqrt(2))
        rho = build_family_state(StateFamily.ENT_COHERENT3, amplitudes)
        a = [ProductKet.coherent(x).modes[0] for x in amplitudes]
        product = slot_overlap(a[0], a[1]) * slot_overlap(a[1], a[2]) * slot_overlap(a[2], a[0])
        expected = 1 / (2 + 2 * product.real)
        for term in rho:
            self.assertAlmostEqual(term.weight, expected, places=14)

    def test_printed_tripartite_normalization_breaks_unit_trace(self):
        """Test the printed tau-sum normalization is opt-in and not trace one."""
        amplitudes = (0, 1, math.sqrt(2))
        rho = build_family_state(StateFamily.ENT_COHERENT3, amplitudes, normalization=Normalization.PRINTED)
        taus = math.exp(-0.5) + math.exp(-1.5 + math.sqrt(2)) + math.exp(-1)
        norm_sq = 1 / (2 + 2 * taus)
        self.assertAlmostEqual(rho.terms[0].weight, norm_sq, places=14)
        self.assertLess(abs(trace(rho)), 0.5)
        self.assertTrue(rho.is_hermitian())

    def test_missing_parameters(self):
        """Test wrong parameter counts are rejected."""
        with self.assertRaises(StateError):
            build_family_state(StateFamily.SEP_NUMBER3, (1, 0))
        with self.assertRaises(StateError):
            build_family_state(StateFamily.FACTORIZABLE, (1, 0))
        with self.assertRaises(StateError):
            build_family_state('sep_number9', (1, 0))


class TraceTests(SimpleTestCase):
    """Tests for trace."""

    def test_off_diagonal_fock_dyad(self):
        """Test 0.5 |10><01| has zero trace."""
        rho = OperatorEnsemble.dyad(ProductKet.fock(1, 0), ProductKet.fock(0, 1), weight=0.5)
        self.assertEqual(trace(rho), 0)

    def test_unnormalized_entangled_coherent(self):
        """Test trace of |A1A2>+|A2A1> without N^2 is 2 + 2 exp(-|A1 - A2|^2)."""
        first = ProductKet.coherent(1, 0.5j)
        second = first.rotated(1)
        rho = OperatorEnsemble.from_terms(Term(1, k, b) for k in (first, second) for b in (first, second))
        expected = 2 + 2 * math.exp(-abs(1 - 0.5j) ** 2)
        self.assertAlmostEqual(trace(rho), expected, places=13)


class PartialTraceTests(SimpleTestCase):
    """Tests for partial_trace against the printed reduced operators."""

    def setUp(self):
        self.a1, self.a2 = 1.0, 0.0
        self.k1 = ProductKet.coherent(self.a1)
        self.k2 = ProductKet.coherent(self.a2)

    def test_separable_coherent_reduction(self):
        """Test trace over mode 2 of the separable coherent state."""
        rho = build_family_state(StateFamily.SEP_COHERENT2, (self.a1, self.a2))
        reduced = partial_trace(rho, 1)
        expected = OperatorEnsemble.from_terms([Term(0.5, self.k1, self.k1), Term(0.5, self.k2, self.k2)])
        self.assertTrue(reduced.isclose(expected))

    def test_entangled_coherent_reduction(self):
        """Test trace over mode 2 of the entangled coherent state term by term."""
        amplitudes = (0.8 + 0.3j, -0.4j)
        rho = build_family_state(StateFamily.ENT_COHERENT2, amplitudes)
        reduced = partial_trace(rho, 1)
        k1, k2 = ProductKet.coherent(amplitudes[0]), ProductKet.coherent(amplitudes[1])
        tau = overlap(k1, k2)
        norm_sq = 1 / (2 + 2 * math.exp(-abs(amplitudes[0] - amplitudes[1]) ** 2))
        expected = OperatorEnsemble.from_terms([
            Term(norm_sq, k1, k1),
            Term(norm_sq, k2, k2),
            Term(norm_sq * tau, k1, k2),
            Term(norm_sq * tau.conjugate(), k2, k1),
        ])
        self.assertTrue(reduced.isclose(expected))
        self.assertTrue(reduced.is_hermitian())
        self.assertAlmostEqual(abs(trace(reduced) - 1), 0, delta=1e-12)

    def test_tripartite_separable_reductions(self):
        """Test the three single-mode reductions of the separable tripartite state."""
        amplitudes = (0, 1, math.sqrt(2))
        rho = build_family_state(StateFamily.SEP_COHERENT3, amplitudes)
        kets = [ProductKet.coherent(a) for a in amplitudes]
        for keep, (i, j) in enumerate([(0, 1), (1, 2), (2, 0)]):
            expected = OperatorEnsemble.from_terms([
                Term(0.5, kets[i], kets[i]), Term(0.5, kets[j], kets[j]),
            ])
            self.assertTrue(reduced_state(rho, keep).isclose(expected), keep)

    def test_tripartite_entangled_reductions(self):
        """Test the derived reductions, including the Hermitian form of the third one."""
        amplitudes = (0.3j, 1, -0.6 + 0.2j)
        rho = build_family_state(StateFamily.ENT_COHERENT3, amplitudes)
        kets = [ProductKet.coherent(a) for a in amplitudes]

        def tau(i, j):
            return overlap(kets[i], kets[j])

        norm_sq = rho.terms[0].weight
        cross = {
            0: (0, 1, tau(2, 1) * tau(0, 2)),
            1: (1, 2, tau(1, 0) * tau(0, 2)),
            2: (2, 0, tau(1, 0) * tau(2, 1)),
        }
        for keep, (i, j) in enumerate([(0, 1), (1, 2), (2, 0)]):
            ket_index, bra_index, weight = cross[keep]
            expected = OperatorEnsemble.from_terms([
                Term(norm_sq, kets[i], kets[i]),
                Term(norm_sq, kets[j], kets[j]),
                Term(norm_sq * weight, kets[ket_index], kets[bra_index]),
                Term(norm_sq * weight.conjugate(), kets[bra_index], kets[ket_index]),
            ])
            reduced = reduced_state(rho, keep)
            self.assertTrue(reduced.isclose(expected), keep)
            self.assertTrue(reduced.is_hermitian())

    def test_third_reduction_has_no_printed_cross_dyad(self):
        """Test rho_ent,C carries |A1><A3|, never |A1><A2|, for the figure amplitudes."""
        amplitudes = (0, 1, math.sqrt(2))
        rho = build_family_state(StateFamily.ENT_COHERENT3, amplitudes)
        a1, a2, a3 = (ProductKet.coherent(a) for a in amplitudes)
        weights = reduced_state(rho, 2).weights()
        self.assertNotIn((a1, a2), weights)
        tau_12, tau_23 = overlap(a1, a2), overlap(a2, a3)
        self.assertAlmostEqual(weights[(a1, a3)], rho.terms[0].weight * tau_12 * tau_23, places=14)
        self.assertAlmostEqual(weights[(a3, a1)], weights[(a1, a3)].conjugate(), places=14)

    def test_number_state_reduction_is_diagonal(self):
        """Test Kronecker deltas remove the cross terms of ent_number2."""
        rho = build_family_state(StateFamily.ENT_NUMBER2, (1, 0))
        reduced = partial_trace(rho, 1)
        self.assertEqual(len(reduced), 2)
        for term in reduced:
            self.assertEqual(term.ket, term.bra)

    def test_factorizable_reduction(self):
        """Test tracing a product dyad leaves the remaining dyad with the same weight."""
        rho = DyadEnsembleFactory(ket=CoherentKetFactory(amplitudes=(0.2, 0.7j, -1)))
        reduced = partial_trace(rho, 0)
        self.assertEqual(len(reduced), 1)
        self.assertEqual(reduced.terms[0].ket, ProductKet.coherent(0.7j, -1))
        self.assertAlmostEqual(reduced.terms[0].weight, 1, places=15)

    def test_invalid_mode(self):
        """Test invalid mode indices raise."""
        rho = build_family_state(StateFamily.SEP_NUMBER2, (1, 0))
        with self.assertRaises(StateError):
            partial_trace(rho, 2)
        with self.assertRaises(StateError):
            partial_trace(partial_trace(rho, 0), 0)


class TensorProductTests(SimpleTestCase):
    """Tests for tensor_product and superposition."""

    def test_product_of_mixtures(self):
        """Test a product of two mixtures has three modes, unit trace and four dyads."""
        rho_a = build_family_state(StateFamily.SEP_NUMBER2, (1, 0))
        rho_b = partial_trace(build_family_state(StateFamily.ENT_NUMBER2, (2, 0)), 1)
        rho = tensor_product(rho_a, rho_b)
        self.assertEqual(rho.mode_count, 3)
        self.assertAlmostEqual(abs(trace(rho) - 1), 0, delta=1e-14)
        self.assertEqual(len(rho), 4)

    def test_kinds_must_match(self):
        """Test Fock and coherent factors are rejected."""
        with self.assertRaises(StateError):
            tensor_product(DyadEnsembleFactory(), DyadEnsembleFactory(ket=CoherentKetFactory()))

    def test_zero_norm_superposition(self):
        """Test |10> - |10> is rejected."""
        ket = FockKetFactory()
        with self.assertRaises(StateError):
            superposition([1, -1], [ket, ket])

    def test_superposition_phase(self):
        """Test (|10> + i|01>)/sqrt2 has the expected cross weight."""
        rho = superposition([1, 1j], [FockKetFactory(), FockKetFactory(occupations=(0, 1))])
        weights = rho.weights()
        self.assertAlmostEqual(weights[(FockKetFactory(), FockKetFactory(occupations=(0, 1)))], -0.5j)


class DriveParamsTests(SimpleTestCase):
    """Tests for DriveParams."""

    def test_default_scaled_charge(self):
        """Test q = sqrt(2 pi / 137) for xi = 1 and the default charge."""
        drive = DriveParamsFactory()
        self.assertAlmostEqual(drive.q, math.sqrt(2 * math.pi / 137), places=14)
        self.assertEqual(drive.mode_count, 2)

    def test_q_tracks_xi(self):
        """Test q is recomputed from xi."""
        drive = DriveParamsFactory(xi=2.0)
        self.assertAlmostEqual(drive.q, 2 * math.sqrt(2 * math.pi / 137), places=14)


class EnsembleSerializerTests(SimpleTestCase):
    """Tests for the ensemble JSON wire format."""

    def test_round_trip_all_families(self):
        """Test serialize then deserialize reproduces every built state."""
        for family, values, rho in all_built_states():
            with self.subTest(family=family):
                restored = ensemble_from_data(ensemble_to_data(rho))
                self.assertEqual(restored, rho)

    def test_wire_format(self):
        """Test the JSON layout of a coherent dyad."""
        rho = OperatorEnsemble.dyad(ProductKet.coherent(1, 0.5j))
        data = ensemble_to_data(rho)
        self.assertEqual(data['kind'], 'coherent')
        self.assertEqual(data['modes'], 2)
        self.assertEqual(data['terms'][0]['weight'], {'re': 1.0, 'im': 0.0})
        self.assertEqual(data['terms'][0]['ket'][1], {'re': 0.0, 'im': 0.5})

    def test_invalid_data(self):
        """Test declared kind must match the slots."""
        data = {'kind': 'coherent', 'modes': 2, 'terms': [{'weight': 1, 'ket': [1, 0], 'bra': [1, 0]}]}
        with self.assertRaises(StateError):
            ensemble_from_data(data)

    def test_phase_is_preserved(self):
        """Test complex weights survive the round trip."""
        rho = superposition([1, cmath.exp(0.3j)], [FockKetFactory(), FockKetFactory(occupations=(0, 1))])
        self.assertEqual(ensemble_from_data(ensemble_to_data(rho)), rho)

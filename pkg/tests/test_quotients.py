"""Cyclic quotient germs: canonical forms, Reid-Tai classification, the
terminality margin, and terminal basket pairs."""

import random
from collections import Counter
from math import gcd

import pytest

from hyperblow.quotients import (
    SingularityClass,
    SmallActionError,
    basket_pair,
    classify,
    format_basket,
    normalize,
    parse_basket,
    parse_quotient,
    quotient,
    same_germ,
    terminality_margin,
    transverse_canonical,
)


class TestNormalize:
    def test_unit_rescaling_identified(self):
        assert same_germ(quotient(13, 3, 7, 35), quotient(13, 5, 3, 2))

    def test_residue_reduction(self):
        assert same_germ(quotient(3, 1, 2, 1), quotient(3, 2, 1, 2))

    def test_unique_unit(self):
        q = quotient(2, 1, 1, 1)
        assert normalize(q).residues == (1, 1, 1)

    def test_normal_form_is_fixpoint(self):
        for _ in range(200):
            r = random.randrange(2, 80)
            res = tuple(
                random.choice([x for x in range(1, r) if gcd(x, r) == 1])
                for _ in range(3)
            )
            n = normalize(quotient(r, *res))
            assert normalize(n) == n

    def test_rejects_unreduced_index(self):
        with pytest.raises(ValueError):
            quotient(0, 1, 1)


class TestClassify:
    def test_noncanonical_point(self):
        assert classify(quotient(13, 3, 4, 5)) is SingularityClass.NONCANONICAL

    def test_terminal_half_point(self):
        assert classify(quotient(2, 1, 1, 1)) is SingularityClass.TERMINAL

    def test_strictly_canonical_third(self):
        assert classify(quotient(3, 1, 1, 1)) is SingularityClass.STRICTLY_CANONICAL

    def test_strictly_canonical_seventh(self):
        assert classify(quotient(7, 1, 2, 4)) is SingularityClass.STRICTLY_CANONICAL

    def test_is_canonical_property(self):
        assert SingularityClass.TERMINAL.is_canonical
        assert SingularityClass.STRICTLY_CANONICAL.is_canonical
        assert not SingularityClass.NONCANONICAL.is_canonical

    def test_rejects_zero_residue(self):
        with pytest.raises(ValueError):
            classify(quotient(4, 0, 1, 3))

    def test_small_action_guard(self):
        with pytest.raises(SmallActionError):
            quotient(4, 2, 2, 1)


class TestTerminalityMargin:
    def test_negative_for_noncanonical(self):
        assert terminality_margin(quotient(7, 1, 1, 3)) == -2

    def test_positive_for_terminal(self):
        assert terminality_margin(quotient(2, 1, 1, 1)) == 1

    def test_zero_for_strictly_canonical(self):
        assert terminality_margin(quotient(3, 1, 1, 1)) == 0

    def test_sign_matches_classification(self):
        for r in range(2, 101):
            units = [x for x in range(1, r) if gcd(x, r) == 1]
            for _ in range(8):
                q = quotient(r, *(random.choice(units) for _ in range(3)))
                m = terminality_margin(q)
                c = classify(q)
                if m > 0:
                    assert c is SingularityClass.TERMINAL
                elif m == 0:
                    assert c is SingularityClass.STRICTLY_CANONICAL
                else:
                    assert c is SingularityClass.NONCANONICAL


class TestBasketPair:
    def test_conjugate_form(self):
        assert basket_pair(quotient(5, 3, 4, 2)) == (2, 5)

    def test_half_point(self):
        assert basket_pair(quotient(2, 1, 1, 1)) == (1, 2)

    def test_rejects_noncanonical(self):
        with pytest.raises(ValueError):
            basket_pair(quotient(13, 5, 3, 2))

    def test_smooth_contributes_nothing(self):
        assert basket_pair(quotient(1, 0, 0, 0)) is None

    def test_pair_always_reduced(self):
        for r in range(2, 60):
            units = [x for x in range(1, r) if gcd(x, r) == 1]
            for _ in range(6):
                q = quotient(r, *(random.choice(units) for _ in range(3)))
                if classify(q) is not SingularityClass.TERMINAL:
                    continue
                b, rr = basket_pair(q)
                assert rr == r and 0 < b <= r // 2 and gcd(b, r) == 1


class TestTransverseCanonical:
    def test_du_val_slice(self):
        # one zero residue, opposite residues: an A-type transverse germ
        assert transverse_canonical(quotient(2, 0, 1, 1))
        assert transverse_canonical(quotient(5, 0, 2, 3))

    def test_non_opposite_slice(self):
        assert not transverse_canonical(quotient(5, 0, 1, 2))


class TestSerialization:
    def test_quotient_round_trip(self):
        for q in [quotient(13, 3, 4, 5), quotient(2, 1, 1, 1), quotient(7, 1, 2, 4)]:
            assert parse_quotient(str(q)) == q

    def test_basket_round_trip(self):
        basket = Counter({(1, 3): 1, (1, 4): 2, (2, 5): 2, (2, 7): 1})
        assert parse_basket(format_basket(basket)) == basket

    def test_empty_basket(self):
        assert parse_basket(format_basket(Counter())) == Counter()


class TestInvarianceUnderNormalize:
    def test_classification_and_margin(self):
        random.seed(7)
        for _ in range(500):
            r = random.randrange(2, 200)
            units = [x for x in range(1, r) if gcd(x, r) == 1]
            q = quotient(r, *(random.choice(units) for _ in range(3)))
            n = normalize(q)
            assert classify(q) == classify(n)
            assert terminality_margin(q) == terminality_margin(n)
            if classify(q) is SingularityClass.TERMINAL:
                assert basket_pair(q) == basket_pair(n)

    def test_terminal_iff_conjugate_pair_form(self):
        # a 3-dim isolated germ is terminal exactly when some presentation
        # reads 1/r(1, r-1, b); check both directions for every index.
        # Scaling invariance lets the first residue be pinned to 1.
        for r in range(2, 26):
            units = [x for x in range(1, r) if gcd(x, r) == 1]
            for a in units:
                for b in units:
                    q = quotient(r, 1, a, b)
                    is_terminal = classify(q) is SingularityClass.TERMINAL
                    assert is_terminal == _has_conjugate_form(r, q.residues)


def _has_conjugate_form(r: int, residues) -> bool:
    for u in (x for x in range(1, r) if gcd(x, r) == 1):
        scaled = Counter((u * x) % r for x in residues)
        if r - 1 == 1:
            if scaled[1] >= 2:
                return True
        elif scaled[1] >= 1 and scaled[r - 1] >= 1:
            return True
    return False

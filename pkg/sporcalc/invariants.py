# -*- coding: utf-8 -*-

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .arith import ExtendedNat, ExtRational, ext_max
from .exceptions import CertificateError, UnsupportedInputError
from .hempel import PowerOfX, hnn_data, normalize, torsion_data
from .presentation import Y, to_commutator_form, z
from .words import GeneratorSymbol, Letter, Word, free_root, product


logger = logging.getLogger(__name__)

POWER = "power"
HEMPEL = "hempel"


@dataclass(frozen=True)
class Classification(object):
    case: str
    k: int
    m: ExtendedNat
    m_F: ExtendedNat
    m_prime: ExtendedNat
    m_double_prime: ExtendedNat
    subcase: Optional[str] = None
    nu: Optional[int] = None
    result: object = field(default=None, compare=False)
    certificate: object = field(default=None, compare=False)
    form: object = field(default=None, compare=False)

    @property
    def label(self):
        if self.case == POWER:
            return f"power({self.subcase})"
        return HEMPEL


def classify(spor, cap=None, trace=False):
    return classify_form(to_commutator_form(spor), cap=cap, trace=trace)


def classify_form(cf, cap=None, trace=False):
    result, certificate = normalize(cf, cap=cap, trace=trace)
    extra = dict(k=cf.k, result=result, certificate=certificate, form=cf)

    if isinstance(result, PowerOfX):
        m = result.m
        if not cf.u:
            raise UnsupportedInputError(
                "unsupported: u = 1 after the basis change; "
                "this is a one-relator group outside the surface-plus-one-relation range"
            )
        if m == 0:
            c = Classification(
                POWER,
                m=ExtendedNat(0),
                m_F=ExtendedNat.infinity(),
                m_prime=ExtendedNat(1),
                m_double_prime=ExtendedNat.infinity(),
                subcase="i",
                **extra,
            )
        elif m == 1:
            log_u = free_root(cf.u).exponent
            c = Classification(
                POWER,
                m=ExtendedNat(1),
                m_F=ExtendedNat(1),
                m_prime=log_u,
                m_double_prime=log_u,
                subcase="ii",
                **extra,
            )
        else:
            c = Classification(
                POWER,
                m=ExtendedNat(m),
                m_F=ExtendedNat(m),
                m_prime=ExtendedNat(m),
                m_double_prime=ExtendedNat(m),
                subcase="iii",
                **extra,
            )
    else:
        td = torsion_data(result.r, cf.u, cf.d)
        m = ExtendedNat(td.m)
        c = Classification(
            HEMPEL,
            m=m,
            m_F=m,
            m_prime=m,
            m_double_prime=m,
            nu=result.nu,
            **extra,
        )
    logger.debug("classified as %s with m=%s", c.label, c.m)
    return c


def euler_characteristic(c, k=None):
    k = c.k if k is None else k
    return ExtRational(-(k - 2) + c.m_double_prime.reciprocal())


def vor_chi(index, n_gens, relator_log):
    if index < 1:
        raise ValueError(f"Index {index} must be at least 1")
    minus_chi = Fraction(1, index) * (n_gens - 1 - relator_log.reciprocal())
    return ExtRational(-minus_chi)


@dataclass(frozen=True)
class L2Report(object):
    b0: ExtRational
    b1: ExtRational
    b2: ExtRational

    def to_json(self):
        return [self.b0.to_number(), self.b1.to_number(), self.b2.to_number()]


def l2_betti(c, k=None, chi=None):
    chi = euler_characteristic(c, k) if chi is None else chi
    if -chi < 0:
        raise CertificateError(f"χ = {chi} is positive for k ≥ 3")
    report = L2Report(ExtRational(0), ext_max(-chi, ExtRational(0)), ExtRational(0))
    if report.b0 - report.b1 + report.b2 != chi:
        raise CertificateError(f"L2 numbers {report.to_json()} do not sum to χ = {chi}")
    return report


@dataclass(frozen=True)
class VorPresentation(object):
    generators: Tuple[GeneratorSymbol, ...]
    relator: Word
    index: int

    def chi(self):
        return vor_chi(self.index, len(self.generators), free_root(self.relator).exponent)

    def to_json(self):
        return {
            "generators": [str(g) for g in self.generators],
            "relator": str(self.relator),
            "index": self.index,
        }


def vor_presentation(cf, result):
    """A one-relator presentation of a finite-index subgroup in the power case."""
    zs = cf.z_generators
    if result.m == 0:
        return VorPresentation(cf.generators, cf.relator, 1)
    if result.m == 1:
        return VorPresentation((Y,) + zs, cf.u, 1)
    m = result.m
    gens = (Y,) + tuple(z(t, i) for i in range(m) for t in range(1, cf.d + 1))
    relator = product(
        Word(Letter(l.symbol.at(i), l.sign) for l in cf.u.letters)
        for i in reversed(range(m))
    )
    return VorPresentation(gens, relator, m)


# Quoted statements the annotations cite.
CITE_VCD = '"vcd G ≤ 2"'
CITE_VFL = '"G is of type VFL"'
CITE_INDICABLE = '"If the root of r is r, then G is locally indicable"'
CITE_TORSION = '"Each torsion subgroup of G lies in some conjugate of C_m"'
CITE_VIRTUALLY_TORSION_FREE = '"G has some torsion-free finite-index subgroup"'
CITE_HNN = '"obtain the HNN decomposition"'
CITE_DICHOTOMY = '"is either a non-negative power of x or" a Hempel relator'
CITE_SURFACE = '"If m=0, then G = < (x,y) v z | [x,y]u >"'
CITE_FREE_PRODUCT = '"Here, G ≃ C∞ ∗ C2"'


@dataclass(frozen=True)
class Annotation(object):
    claim: str
    paper_ref: str

    def to_json(self):
        return {"claim": self.claim, "paper_ref": self.paper_ref}


def annotations(c):
    notes = [
        Annotation("vcd G ≤ 2 and cd_Q G ≤ 2", CITE_VCD),
        Annotation("G is of type VFL", CITE_VFL),
    ]
    m = c.m
    if c.case == HEMPEL:
        notes.append(
            Annotation(
                f"G is locally indicable: {m == 1}",
                CITE_INDICABLE,
            )
        )
        if m.value > 1:
            notes.append(
                Annotation(
                    f"every finite subgroup lies in a conjugate of C_{m}",
                    CITE_TORSION,
                )
            )
        notes.append(
            Annotation(
                "G has a torsion-free finite-index subgroup", CITE_VIRTUALLY_TORSION_FREE
            )
        )
        notes.append(
            Annotation(
                f"G is an HNN extension of a one-relator group over rank-"
                f"{1 + c.nu * (c.k - 2)} free edge groups",
                CITE_HNN,
            )
        )
        notes.append(
            Annotation(
                "assumes_r_nontrivial: r is nontrivial modulo the surface relator",
                CITE_DICHOTOMY,
            )
        )
    else:
        if c.subcase == "i":
            notes.append(Annotation("G is a surface group", CITE_SURFACE))
        else:
            notes.append(
                Annotation(
                    "assumes_r_nontrivial: r is nontrivial modulo the surface relator",
                    CITE_DICHOTOMY,
                )
            )
        if c.k == 3 and m == 1:
            notes.append(
                Annotation(
                    f"G ≅ C∞ ∗ C_{c.m_double_prime}",
                    CITE_FREE_PRODUCT,
                )
            )
    return notes


@dataclass(frozen=True)
class Report(object):
    classification: Classification
    chi: ExtRational
    l2: L2Report
    annotations: Tuple[Annotation, ...]
    vor: Optional[VorPresentation] = None
    hnn: object = None

    def to_json(self, certificate=False, trace=False):
        c = self.classification
        doc = {
            "case": c.label,
            "m": c.m.to_json(),
            "m_F": c.m_F.to_json(),
            "m_prime": c.m_prime.to_json(),
            "m_double_prime": c.m_double_prime.to_json(),
            "chi": self.chi.to_json(),
            "l2": self.l2.to_json(),
            "annotations": [a.to_json() for a in self.annotations],
        }
        if c.nu is not None:
            doc["nu"] = c.nu
            doc["relator"] = str(c.result.r)
        if self.vor is not None:
            doc["virtually_one_relator"] = self.vor.to_json()
        if self.hnn is not None:
            doc["hnn"] = self.hnn.to_json()
        if certificate and c.certificate is not None:
            doc["certificate"] = c.certificate.to_json()
        if trace and c.certificate is not None:
            doc["trace"] = [step.to_json() for step in c.certificate.trace]
        return doc


def report(c):
    chi = euler_characteristic(c)
    l2 = l2_betti(c, chi=chi)
    vor = hnn = None
    if c.case == POWER:
        vor = vor_presentation(c.form, c.result)
        if vor.chi() != chi:
            raise CertificateError(
                f"Finite-index one-relator χ = {vor.chi()} disagrees with χ = {chi}"
            )
    else:
        hnn = hnn_data(c.result.r, c.form)
    return Report(c, chi, l2, tuple(annotations(c)), vor, hnn)

# -*- coding: utf-8 -*-

import re
import json
import logging
import functools

import click

from .__version__ import __version__
from .bass_serre import (
    A,
    B,
    StaggerProblem,
    factor_generators,
    fixes_vertex,
    fp_normal_form,
    fp_root,
    staggerable_search,
)
from .config import load_config
from .exceptions import PresentationSyntaxError, PreconditionError, SporcalcError
from .fox import (
    chain_complex,
    evaluate,
    fox_derivative,
    fundamental_identity_check,
    registered_quotients,
    QuotientMap,
)
from .hempel import Hempel, check_hempel, hnn_data, normalize, torsion_data
from .invariants import classify_form, report
from .presentation import (
    NON_ORIENTABLE,
    ORIENTABLE,
    Presentation,
    SporInput,
    commutator_form_from_presentation,
    default_generators,
    format_word,
    parse,
    parse_word,
    surface_from_presentation,
    surface_input,
    to_commutator_form,
)
from .residual import potency_s_witness, potency_search
from .words import GeneratorSymbol, free_root


logger = logging.getLogger(__name__)

TAGGED = re.compile(r"\s*([AB])\(([^()]*)\)\s*")

CAP_HELP = (
    "Override every search cap at once: normalize steps, stagger nodes, "
    "potency monomials and potency order steps."
)


def emit(doc, as_json):
    if as_json:
        click.echo(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False))
        return
    for key in sorted(doc):
        value = doc[key]
        if not isinstance(value, str):
            value = json.dumps(value, sort_keys=True, ensure_ascii=False)
        click.echo(f"{key}: {value}")


def emit_trace(steps, doc, as_json):
    """Trace steps go into the document with --json, else one JSON line each."""
    if as_json:
        doc["trace"] = [step.to_json() for step in steps]
        return
    for step in steps:
        click.echo(json.dumps(step.to_json(), sort_keys=True, ensure_ascii=False))


def reports_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except SporcalcError as e:
            click.secho(f"Error: {e}", fg="red", err=True)
            click.get_current_context().exit(e.exit_code)

    return wrapper


def input_options(f):
    f = click.option("--relator", help="Extra relator r for the surface shortcuts.")(f)
    f = click.option(
        "--non-orientable", "non_orientable", type=int, help="Non-orientable surface with k generators."
    )(f)
    f = click.option("--orientable", type=int, help="Orientable surface of genus g.")(f)
    f = click.option("--presentation", help="Inline presentation < gens | relators >.")(f)
    f = click.argument(
        "source", required=False, type=click.Path(exists=True, dir_okay=False)
    )(f)
    return f


def output_options(f):
    f = click.option(
        "--cap", type=int, envvar="SPORCALC_CAP", help=CAP_HELP
    )(f)
    f = click.option("--json", "as_json", is_flag=True, help="Emit one JSON document.")(f)
    return f


def read_text(source):
    with open(source, "r", encoding="utf-8") as f:
        return f.read()


def read_presentation(source, presentation):
    if (source is None) == (presentation is None):
        raise click.UsageError("Give exactly one of FILE or --presentation.")
    return parse(presentation if presentation is not None else read_text(source))


def read_input(source, presentation, orientable, non_orientable, relator):
    """Return a SporInput or, for input already in commutator form, a CommutatorForm."""
    chosen = [v for v in (source, presentation, orientable, non_orientable) if v is not None]
    if len(chosen) != 1:
        raise click.UsageError(
            "Give exactly one of FILE, --presentation, --orientable or --non-orientable."
        )
    if orientable is not None or non_orientable is not None:
        r = parse_word(relator or "")
        orientability = ORIENTABLE if orientable is not None else NON_ORIENTABLE
        n = orientable if orientable is not None else non_orientable
        k = 2 * n if orientability == ORIENTABLE else n
        return surface_input(orientability, n, r, default_generators(k, r.symbols))
    if relator is not None:
        raise click.UsageError("--relator only goes with --orientable or --non-orientable.")
    p = read_presentation(source, presentation)
    cf = commutator_form_from_presentation(p)
    if cf is not None:
        logger.info("input is already in commutator form with d=%d", cf.d)
        return cf
    return surface_from_presentation(p)


def as_form(spor):
    if isinstance(spor, SporInput):
        return to_commutator_form(spor)
    return spor


def settings(ctx, cap):
    return ctx.obj.with_cap(cap)


@click.group()
@click.version_option(__version__, prog_name="sporcalc")
@click.option("-v", "--verbose", count=True, help="Log to standard error; repeat for debug.")
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False),
    help="YAML file with search caps.",
)
@click.pass_context
@reports_errors
def cli(ctx, verbose, config_path):
    """sporcalc: exact invariants of surface-plus-one-relation groups."""
    if verbose:
        logging.basicConfig(
            level=logging.DEBUG if verbose > 1 else logging.INFO,
            format="%(levelname)s %(name)s: %(message)s",
        )
    ctx.obj = load_config(config_path)


def _classification(ctx, inputs, cap, trace=False):
    config = settings(ctx, cap)
    return classify_form(as_form(read_input(*inputs)), cap=config.normalize_cap, trace=trace)


@cli.command()
@input_options
@output_options
@click.option("--trace", is_flag=True, help="Record every basis shift.")
@click.pass_context
@reports_errors
def classify(ctx, source, presentation, orientable, non_orientable, relator, as_json, cap, trace):
    """Classify G and report m, chi and the L2-Betti numbers."""
    inputs = (source, presentation, orientable, non_orientable, relator)
    c = _classification(ctx, inputs, cap, trace)
    doc = report(c).to_json(certificate=trace)
    if trace:
        emit_trace(c.certificate.trace, doc, as_json)
    emit(doc, as_json)


@cli.command("normalize")
@input_options
@output_options
@click.option("--trace", is_flag=True, help="Record every basis shift.")
@click.pass_context
@reports_errors
def normalize_command(ctx, source, presentation, orientable, non_orientable, relator, as_json,
                      cap, trace):
    """Rewrite r into a power of x or a Hempel relator, with a certificate."""
    config = settings(ctx, cap)
    cf = as_form(read_input(source, presentation, orientable, non_orientable, relator))
    result, certificate = normalize(cf, cap=config.normalize_cap, trace=trace)
    doc = {
        "form": {"d": cf.d, "u": str(cf.u), "r": str(cf.r)},
        "certificate": certificate.to_json(),
    }
    if isinstance(result, Hempel):
        doc["result"] = {
            "kind": "hempel",
            "relator": str(result.r),
            "nu": result.nu,
            "checks": check_hempel(result.r, cf.u, cf.d).to_json(),
        }
    else:
        doc["result"] = {"kind": "power", "m": result.m}
    if trace:
        emit_trace(certificate.trace, doc, as_json)
    emit(doc, as_json)


@cli.command()
@input_options
@output_options
@click.pass_context
@reports_errors
def euler(ctx, source, presentation, orientable, non_orientable, relator, as_json, cap):
    """Print the Euler characteristic of G."""
    inputs = (source, presentation, orientable, non_orientable, relator)
    doc = report(_classification(ctx, inputs, cap)).to_json()
    emit({"chi": doc["chi"]}, as_json)


@cli.command()
@input_options
@output_options
@click.pass_context
@reports_errors
def l2(ctx, source, presentation, orientable, non_orientable, relator, as_json, cap):
    """Print the L2-Betti numbers of G."""
    inputs = (source, presentation, orientable, non_orientable, relator)
    doc = report(_classification(ctx, inputs, cap)).to_json()
    emit({"chi": doc["chi"], "l2": doc["l2"]}, as_json)


@cli.command()
@input_options
@click.option("--json", "as_json", is_flag=True, help="Emit one JSON document.")
@click.pass_context
@reports_errors
def fox(ctx, source, presentation, orientable, non_orientable, relator, as_json):
    """Fox derivatives of each relator over the input generators."""
    spor = read_input(source, presentation, orientable, non_orientable, relator)
    p = spor.presentation
    doc = {"generators": [str(g) for g in p.generators], "relators": []}
    for r in p.relators:
        jet = fox_derivative(r, p.generators)
        doc["relators"].append(
            {
                "relator": format_word(r),
                "derivatives": jet.to_json(),
                "fundamental_identity": fundamental_identity_check(r, p.generators, jet),
            }
        )
    emit(doc, as_json)


def _complex_checks(M):
    p = Presentation(M.generators, M.relators)
    quotients = [QuotientMap.abelianization(p)]
    if M.m == 1:
        quotients += registered_quotients(p)
    checks = []
    for q in quotients:
        checks.append(
            {
                "quotient": q.kind,
                "degree": q.degree,
                "d1_d2_zero": evaluate(M, q).is_complex(),
            }
        )
    return checks


@cli.command("complex")
@input_options
@click.option("--emit", "mode", type=click.Choice(["json", "text"]), default="json")
@click.option("--cap", type=int, envvar="SPORCALC_CAP", help=CAP_HELP)
@click.option("--check", is_flag=True, help="Evaluate d1 d2 under the registered quotients.")
@click.pass_context
@reports_errors
def complex_command(ctx, source, presentation, orientable, non_orientable, relator, mode, cap, check):
    """Boundary matrices of the chain complex in the Hempel case."""
    c = _classification(ctx, (source, presentation, orientable, non_orientable, relator), cap)
    if not isinstance(c.result, Hempel):
        raise PreconditionError(f"complex needs the Hempel case, got {c.label}")
    M = chain_complex(c.form, c.result, torsion_data(c.result.r, c.form.u, c.form.d))
    doc = M.to_json()
    if check:
        doc["checks"] = _complex_checks(M)
    if mode == "json":
        emit(doc, True)
        return
    click.echo(f"generators: {', '.join(doc['generators'])}")
    for i, row in enumerate(M.d2, 1):
        averaged = f" (averaged over {M.averaged_over})" if i - 1 == M.averaged_row else ""
        click.echo(f"d2 row {i}{averaged}:")
        for g, entry in zip(M.generators, row):
            click.echo(f"  d/d{g}: {entry}")
    click.echo("d1:")
    for g, entry in zip(M.generators, M.d1):
        click.echo(f"  {g}: {entry}")
    for item in doc.get("checks", ()):
        click.echo(f"check {item['quotient']}({item['degree']}): {item['d1_d2_zero']}")


@cli.command()
@input_options
@output_options
@click.pass_context
@reports_errors
def hnn(ctx, source, presentation, orientable, non_orientable, relator, as_json, cap):
    """HNN decomposition of G in the Hempel case."""
    c = _classification(ctx, (source, presentation, orientable, non_orientable, relator), cap)
    if not isinstance(c.result, Hempel):
        raise PreconditionError(f"hnn needs the Hempel case, got {c.label}")
    doc = hnn_data(c.result.r, c.form).to_json()
    doc["torsion"] = torsion_data(c.result.r, c.form.u, c.form.d).to_json()
    emit(doc, as_json)


@cli.command()
@click.option("--word", required=True, help="A word in the free group.")
@click.option("--json", "as_json", is_flag=True, help="Emit one JSON document.")
@reports_errors
def root(word, as_json):
    """Root and log of a free-group word."""
    emit(free_root(parse_word(word)).to_json(), as_json)


@cli.command()
@click.argument("source", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--presentation", help="Inline presentation < gens | relators >.")
@output_options
@click.pass_context
@reports_errors
def stagger(ctx, source, presentation, as_json, cap):
    """Search for a staggered order of the relators."""
    config = settings(ctx, cap)
    p = read_presentation(source, presentation)
    witness = staggerable_search(StaggerProblem(p.relators, p.generators), cap=config.stagger_cap)
    emit(witness.to_json(), as_json)


def parse_tagged(text, ranks):
    """Read ``A(a1 a2^-1) B(b1)`` into a free-product element."""
    raw = []
    pos = 0
    for match in TAGGED.finditer(text):
        if match.start() != pos:
            raise PresentationSyntaxError(
                f"Unexpected {text[pos:match.start()]!r}", line=1, column=pos + 1
            )
        tag, inner = match.groups()
        raw.append((tag, parse_word(inner, factor_generators(tag, ranks[tag]))))
        pos = match.end()
    if pos != len(text):
        raise PresentationSyntaxError(f"Unexpected {text[pos:]!r}", line=1, column=pos + 1)
    return fp_normal_form(raw)


@cli.command()
@click.option("--a", "rank_a", type=int, required=True, help="Rank of the factor A.")
@click.option("--b", "rank_b", type=int, required=True, help="Rank of the factor B.")
@click.option("--word", required=True, help="Tagged word such as 'A(a1) B(b1^-1)'.")
@click.option("--json", "as_json", is_flag=True, help="Emit one JSON document.")
@reports_errors
def fproot(rank_a, rank_b, word, as_json):
    """Axis and root of an element of A * B acting on its Bass-Serre tree."""
    g = parse_tagged(word, {A: rank_a, B: rank_b})
    vertex = fixes_vertex(g)
    if vertex is not None:
        doc = {
            "fixes_vertex": True,
            "conjugator": str(vertex.conjugator),
            "tag": vertex.tag,
        }
    else:
        doc = fp_root(g).to_json()
        doc["fixes_vertex"] = False
    emit(doc, as_json)


@cli.command()
@click.option("--d", "d", type=int, required=True, help="Number of z generators.")
@click.option("--u", "u", required=True, help="The word u in z1..zd.")
@click.option("--element", required=True, help="Element s of (x,y) v z.")
@click.option("--prime", type=int, help="Prime p; search p in (2, 3) when omitted.")
@click.option("--n", "n", type=int, help="Exponent n of q = p^n.")
@click.option(
    "--degree",
    type=int,
    help="Truncation degree, n by default. Capped below p^n: larger values exit 1.",
)
@click.option("--order", is_flag=True, help="Also compute the order of the image.")
@output_options
@click.pass_context
@reports_errors
def potency(ctx, d, u, element, prime, n, degree, order, as_json, cap):
    """Finite p-group witness for an element of < (x,y) v z | [x,y]u >."""
    config = settings(ctx, cap)
    gens = (GeneratorSymbol("x"), GeneratorSymbol("y")) + tuple(
        GeneratorSymbol(f"z{t}") for t in range(1, d + 1)
    )
    u_word = parse_word(u, gens[2:])
    s = parse_word(element, gens)
    limits = dict(
        degree=degree,
        order=order,
        monomial_cap=config.monomial_cap,
        order_cap=config.order_cap,
    )
    if prime is None:
        result = potency_search(s, d, u_word, max_n=n or 2, **limits)
    else:
        result = potency_s_witness(s, d, u_word, prime, n or 1, **limits)
    emit(result.to_json(), as_json)

"""Command-line interface.

Every command is a thin wrapper over the module functions: it reads
canonical JSON from stdin or a file argument, calls one operation, and
prints canonical JSON to stdout.  Usage errors exit with status 2;
domain errors print a structured ``{"error": {...}}`` object to stderr
and exit with status 1, so pipelines fail loudly and machine-readably.
"""

from __future__ import annotations

import functools
import os
import sys
from typing import IO, Optional

import click

from .analysis import (
    check_sign_coherence,
    find_full_subquiver,
    mutation_class_bfs,
    probe_two_universal,
)
from .errors import QuiverLabError
from .matrix import framed as framed_matrix
from .plabic import (
    augment_to_conditions,
    flip_move,
    plabic_from_quiver,
    quiver_of,
    square_move,
)
from .serialize import (
    certificate_from_obj,
    certificate_to_obj,
    dumps_canonical,
    loads,
    matrix_from_obj,
    matrix_to_obj,
    plabic_from_obj,
    plabic_to_obj,
    planar_from_obj,
)
from .session import (
    build_object,
    class_report_obj,
    coherence_report_obj,
    contains_report_obj,
    object_to_obj,
    probe_report_obj,
    verification_obj,
)
from .solver import embed_matrix, embed_quiver, verify_certificate

SEED_ENV = "QUIVERLAB_SEED"


def _domain_errors(f):
    """Turn any domain error into a structured stderr line and exit 1."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except QuiverLabError as exc:
            click.echo(dumps_canonical({"error": exc.payload()}), err=True)
            sys.exit(1)

    return wrapper


def _emit(obj: dict) -> None:
    click.echo(dumps_canonical(obj))


def _read_matrix(src: IO[str]):
    return matrix_from_obj(loads(src.read()))


def _read_plabic(src: IO[str]):
    return plabic_from_obj(loads(src.read()))


def _int_csv(_ctx, param, value: Optional[str]) -> Optional[list[int]]:
    if value is None:
        return None
    try:
        return [int(part) for part in value.split(",") if part.strip() != ""]
    except ValueError:
        raise click.BadParameter(
            f"expected a comma-separated list of integers, got {value!r}",
            param=param,
        )


_SRC = click.argument("src", type=click.File("r"), default="-", required=False)


@click.group()
def main() -> None:
    """Exact-arithmetic toolkit for quiver mutation and bicolored graphs."""


# --- construction and matrix operations -----------------------------------------

@main.command("make")
@click.argument("name")
@click.option("--n", type=int, default=None, help="Size parameter for parametric families.")
@click.option("--d", callback=_int_csv, default=None, help="Comma-separated diagonal, e.g. 1,2,2.")
@click.option("--k", type=int, default=None, help="Grid rows.")
@click.option("--ell", type=int, default=None, help="Grid columns.")
@click.option("--m", type=int, default=None, help="Kronecker arrow multiplicity.")
@click.option("--core", type=click.Choice(["somos", "double4"]), default=None,
              help="Core used by the glued universal construction.")
@_domain_errors
def make_cmd(name, n, d, k, ell, m, core) -> None:
    """Print a named construction as canonical JSON."""
    obj = build_object(name, n=n, d=d, k=k, ell=ell, m=m, core=core)
    _emit(object_to_obj(obj))


@main.command("mutate")
@click.option("--at", "ats", type=int, multiple=True, required=True,
              help="Vertex to mutate (1-based); repeatable, applied in order.")
@_SRC
@_domain_errors
def mutate_cmd(ats, src) -> None:
    """Mutate a matrix at one or more vertices."""
    m = _read_matrix(src)
    for at in ats:
        m = m.mutate(at - 1)
    _emit(matrix_to_obj(m))


@main.command("restrict")
@click.option("--keep", callback=_int_csv, required=True,
              help="Comma-separated 1-based vertices of the full subquiver to keep.")
@_SRC
@_domain_errors
def restrict_cmd(keep, src) -> None:
    """Restrict a matrix to a full subquiver."""
    m = _read_matrix(src)
    _emit(matrix_to_obj(m.restrict([i - 1 for i in keep])))


@main.command("frame")
@_SRC
@_domain_errors
def frame_cmd(src) -> None:
    """Attach one frozen copy of every movable vertex."""
    _emit(matrix_to_obj(framed_matrix(_read_matrix(src))))


# --- analysis probes --------------------------------------------------------------

@main.command("class")
@click.option("--budget", type=int, default=1000, show_default=True,
              help="Maximum number of isomorphism classes to expand.")
@click.option("--depth", type=int, default=None,
              help="Maximum mutation depth (defaults to the node budget).")
@_SRC
@_domain_errors
def class_cmd(budget, depth, src) -> None:
    """Breadth-first mutation-class exploration within a budget."""
    m = _read_matrix(src)
    report = mutation_class_bfs(m, (budget, depth if depth is not None else budget))
    _emit(class_report_obj(report))


@main.command("probe2")
@click.option("--mult", type=int, default=3, show_default=True,
              help="Arrow multiplicity that ends the search.")
@click.option("--depth", type=int, default=6, show_default=True,
              help="Maximum mutation depth.")
@click.option("--nodes", type=int, default=None,
              help="Optional cap on distinct states visited.")
@_SRC
@_domain_errors
def probe2_cmd(mult, depth, nodes, src) -> None:
    """Search for a mutation reaching a given arrow multiplicity."""
    m = _read_matrix(src)
    _emit(probe_report_obj(probe_two_universal(m, depth, mult, max_nodes=nodes)))


@main.command("sign-coherence")
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--len", "max_len", type=int, default=10, show_default=True,
              help="Maximum length of each random mutation sequence.")
@click.option("--seed", type=int, default=0, show_default=True,
              help=f"RNG seed; the {SEED_ENV} environment variable overrides it.")
@_SRC
@_domain_errors
def sign_coherence_cmd(trials, max_len, seed, src) -> None:
    """Random search for sign-coherence violations on the framed matrix."""
    if os.environ.get(SEED_ENV):
        seed = int(os.environ[SEED_ENV])
    m = _read_matrix(src)
    _emit(coherence_report_obj(check_sign_coherence(m, trials, max_len, seed)))


@main.command("contains")
@click.argument("needle", type=click.File("r"))
@click.argument("haystack", type=click.File("r"))
@_domain_errors
def contains_cmd(needle, haystack) -> None:
    """Search HAYSTACK for a full subquiver isomorphic to NEEDLE."""
    n = _read_matrix(needle)
    h = _read_matrix(haystack)
    _emit(contains_report_obj(find_full_subquiver(h, n)))


# --- embedding certificates --------------------------------------------------------

@main.command("embed")
@click.option("--target", type=click.File("r"), required=True,
              help="Matrix JSON file to embed.")
@click.option("--core", type=click.Choice(["somos", "double4"]), default="somos",
              show_default=True)
@click.option("--symmetrizer", callback=_int_csv, default=None,
              help="Comma-separated diagonal for skew-symmetrizable targets.")
@_domain_errors
def embed_cmd(target, core, symmetrizer) -> None:
    """Produce a replayable certificate embedding TARGET in a universal object."""
    t = _read_matrix(target)
    if symmetrizer is not None:
        cert = embed_matrix(t, symmetrizer)
    else:
        cert = embed_quiver(t, core=core)
    _emit(certificate_to_obj(cert))


@main.command("verify")
@_SRC
@_domain_errors
def verify_cmd(src) -> None:
    """Replay a certificate; exit 0 when it reproduces its target."""
    cert = certificate_from_obj(loads(src.read()))
    result = verify_certificate(cert)
    _emit(verification_obj(result))
    if not result.ok:
        sys.exit(1)


# --- bicolored graphs ----------------------------------------------------------------

@main.group("plabic")
def plabic_group() -> None:
    """Operations on bicolored graphs in a disk."""


@plabic_group.command("quiver-of")
@_SRC
@_domain_errors
def plabic_quiver_of_cmd(src) -> None:
    """Print the exchange matrix of a bicolored graph's bounded faces."""
    _emit(matrix_to_obj(quiver_of(_read_plabic(src))))


@plabic_group.command("square")
@click.option("--face", type=int, required=True,
              help="1-based bounded-face index, matching the quiver's vertex order.")
@_SRC
@_domain_errors
def plabic_square_cmd(face, src) -> None:
    """Apply the square move at a bounded face."""
    _emit(plabic_to_obj(square_move(_read_plabic(src), face - 1)))


@plabic_group.command("flip")
@click.option("--edge", type=int, required=True,
              help="Half-edge id of the unicolored edge to flip, as stored in JSON.")
@_SRC
@_domain_errors
def plabic_flip_cmd(edge, src) -> None:
    """Apply the flip move at a unicolored interior edge."""
    _emit(plabic_to_obj(flip_move(_read_plabic(src), edge)))


@plabic_group.command("from-quiver")
@click.option("--augment", is_flag=True,
              help="First add boundary arrows until the face conditions hold.")
@_SRC
@_domain_errors
def plabic_from_quiver_cmd(augment, src) -> None:
    """Build a bicolored graph whose face quiver is the given planar quiver."""
    pq = planar_from_obj(loads(src.read()))
    if augment:
        pq = augment_to_conditions(pq)
    _emit(plabic_to_obj(plabic_from_quiver(pq)))


@plabic_group.command("universal")
@click.option("--n", type=int, required=True, help="Number of base vertices.")
@_domain_errors
def plabic_universal_cmd(n) -> None:
    """Bicolored graph realizing the planar universal quiver."""
    _emit(object_to_obj(build_object("universal_plabic", n=n)))


# --- service -----------------------------------------------------------------------

@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve_cmd(host, port) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()

"""Command-line surface.

Subcommands render the sign tables, re-derive the complete table from the
product laws, build and serialize exemplar triples, run single products or
the full verification sweep, and check the star-DGA machinery. Everything
is deterministic; ``--json`` variants emit the same data structurally.

Exit codes: 0 all checks pass, 1 a mathematically meaningful failure
(undefined product, variant mismatch, prediction mismatch), 2 usage error.

Examples:

    kospectral table complete
    kospectral table product --json
    kospectral mnemonic
    kospectral product 2_U 6_U
    kospectral product 2_U 2_U --traditional --dirac D
    kospectral exemplar 4_L --out 4L.json
    kospectral sweep
    kospectral dga-check
"""

from __future__ import annotations

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import click

from . import dga as dga_mod
from . import exemplars, kosigns, products, triples
from .kosigns import KOClass, Parity, VariantMismatchError

__all__ = ["cli", "main"]


@dataclass
class RunReport:
    command: str
    entries: list[tuple[str, bool]] = field(default_factory=list)

    def add(self, name: str, ok: bool) -> None:
        self.entries.append((name, ok))

    @property
    def passed(self) -> int:
        return sum(1 for _, ok in self.entries if ok)

    @property
    def failed(self) -> int:
        return len(self.entries) - self.passed

    @property
    def exit_status(self) -> int:
        return 0 if self.failed == 0 else 1

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "checks": {name: ok for name, ok in sorted(self.entries)},
            "passed": self.passed,
            "failed": self.failed,
            "exit_status": self.exit_status,
        }

    def echo_summary(self, verbose: bool = False) -> None:
        for name, ok in self.entries:
            if verbose or not ok:
                click.echo(f"{'PASS' if ok else 'FAIL'}  {name}")
        click.echo(f"{self.passed} passed, {self.failed} failed")


def _fmt_sign(v: int | None) -> str:
    return "" if v is None else f"{v:+d}"


def _render_columns(header: list[str], rows: dict[str, list[str]], pad: int = 5) -> str:
    names = list(rows)
    label_w = max(len(n) for n in names) + 2
    widths = [max(len(h), *(len(rows[n][i]) for n in names)) + 2 for i, h in enumerate(header)]
    out = [" " * label_w + "".join(h.rjust(w) for h, w in zip(header, widths))]
    for n in names:
        out.append(n.ljust(label_w) + "".join(v.rjust(w) for v, w in zip(rows[n], widths)))
    return "\n".join(out)


def _parse_class(name: str) -> KOClass:
    try:
        return KOClass.parse(name)
    except ValueError as e:
        raise click.UsageError(str(e))


@click.group()
def cli():
    """Exact-arithmetic toolkit for real spectral triples and their
    graded products, with full KO-dimension sign bookkeeping."""


# --------------------------------------------------------------------------
# table
# --------------------------------------------------------------------------


def _table_classic_data() -> list[dict]:
    cols = []
    for d in range(8):
        e, ep, epp = kosigns.CLASSIC_SIGNS[d]
        cols.append({
            "dim": d,
            "eps": e,
            "eps_prime": ep,
            "eps_dprime": epp,
            "class": str(kosigns.CLASSIC_CLASS[d]) if epp is not None else None,
        })
    return cols


def _table_extended_data() -> list[dict]:
    cols = []
    for d, cls in kosigns.EXTENDED_COLUMNS:
        if cls is None:
            e, ep, _ = kosigns.CLASSIC_SIGNS[d]
            cols.append({"dim": d, "eps": e, "eps_prime": ep,
                         "eps_dprime": None, "variant": None})
        else:
            s = kosigns.signs_of_class(cls)
            cols.append({"dim": d, "eps": s.eps, "eps_prime": s.eps_prime,
                         "eps_dprime": s.eps_dprime, "variant": cls.variant})
    return cols


def _table_complete_data() -> dict[str, dict]:
    out = {}
    for c in kosigns.all_classes():
        s = kosigns.signs_of_class(c)
        out[str(c)] = {
            "eps": s.eps,
            "eps_prime": s.eps_prime,
            "eps_dprime": s.eps_dprime,
            "eps_dprime_is_label": c.parity is Parity.ODD,
        }
    return out


def _table_product_data() -> dict[str, dict[str, str | None]]:
    grid = kosigns.product_table()
    out: dict[str, dict[str, str | None]] = {}
    for ci in kosigns.all_classes():
        out[str(ci)] = {
            str(cj): (str(grid[(ci, cj)]) if grid[(ci, cj)] is not None else None)
            for cj in kosigns.all_classes()
        }
    return out


@cli.command()
@click.argument("which", type=click.Choice(["classic", "extended", "complete", "product"]))
@click.option("--json", "as_json", is_flag=True, help="Emit the table as JSON.")
def table(which: str, as_json: bool):
    """Print one of the sign tables.

    classic: one sign column per dimension mod 8, no eps'' in odd columns.
    extended: twelve columns, the even ones split by their eps' sign and
    marked with the upper/lower variant they correspond to.
    complete: all sixteen classes with eps'' labels in the odd columns.
    product: the 16x16 class product grid, blank where the variants mix.
    """
    if which == "classic":
        data = _table_classic_data()
        if as_json:
            click.echo(json.dumps({"columns": data}, indent=2))
            return
        header = [str(c["dim"]) for c in data]
        click.echo(_render_columns(header, {
            "eps": [_fmt_sign(c["eps"]) for c in data],
            "eps'": [_fmt_sign(c["eps_prime"]) for c in data],
            "eps''": [_fmt_sign(c["eps_dprime"]) for c in data],
        }))
        pairs = ", ".join(f"{c['dim']} = {c['class']}" for c in data if c["class"])
        click.echo(f"\neven columns in the complete table: {pairs}")
        click.echo("odd columns carry no eps'' and match both variants")
    elif which == "extended":
        data = _table_extended_data()
        if as_json:
            click.echo(json.dumps({"columns": data}, indent=2))
            return
        header = [str(c["dim"]) for c in data]
        click.echo(_render_columns(header, {
            "eps": [_fmt_sign(c["eps"]) for c in data],
            "eps'": [_fmt_sign(c["eps_prime"]) for c in data],
            "eps''": [_fmt_sign(c["eps_dprime"]) for c in data],
            "variant": [(c["variant"] or "") for c in data],
        }))
    elif which == "complete":
        data = _table_complete_data()
        if as_json:
            click.echo(json.dumps({"classes": data}, indent=2))
            return
        names = list(data)
        click.echo(_render_columns(names, {
            "eps": [_fmt_sign(data[n]["eps"]) for n in names],
            "eps'": [_fmt_sign(data[n]["eps_prime"]) for n in names],
            "eps''": [
                _fmt_sign(data[n]["eps_dprime"]) + ("*" if data[n]["eps_dprime_is_label"] else "")
                for n in names
            ],
        }))
        click.echo("\n(*) assigned label: odd triples carry eps'' as data, not as an operator")
    else:
        data = _table_product_data()
        if as_json:
            click.echo(json.dumps(data, indent=2))
            return
        names = list(data)
        width = max(len(n) for n in names) + 2
        click.echo(" " * width + "".join(n.rjust(width) for n in names))
        for ci in names:
            row = "".join((data[ci][cj] or "").rjust(width) for cj in names)
            click.echo(ci.ljust(width) + row)
        click.echo("\nblank: mixed upper/lower variants, no well-defined KO-dimension")


# --------------------------------------------------------------------------
# mnemonic
# --------------------------------------------------------------------------


@cli.command()
def mnemonic():
    """Re-derive the complete table in three steps and check it.

    Step 1 pairs the eight even sign triples under the upper/lower flip;
    step 2 pins dimensions 0 and 4 through the product law; step 3 fills
    the staircase. Exits nonzero if the derived table differs from the
    stored one.
    """
    trace = kosigns.derive_table_mnemonic()
    click.echo("step 1: flip-partner pairs of the even sign triples")
    for a, b in trace.pairs:
        click.echo(f"  {a}  <->  {b}")
    click.echo("step 2: the unique product-closed pair is dimension 0:")
    click.echo(f"  {trace.dim0_pair[0]}  {trace.dim0_pair[1]}")
    click.echo("        the unique pair squaring into it is dimension 4:")
    click.echo(f"  {trace.dim4_pair[0]}  {trace.dim4_pair[1]}")
    click.echo("step 3: staircase assignment of the remaining dimensions\n")
    names = [str(c) for c in kosigns.all_classes()]
    click.echo(_render_columns(names, {
        "eps": [_fmt_sign(trace.table[c].eps) for c in kosigns.all_classes()],
        "eps'": [_fmt_sign(trace.table[c].eps_prime) for c in kosigns.all_classes()],
        "eps''": [_fmt_sign(trace.table[c].eps_dprime) for c in kosigns.all_classes()],
    }))
    if trace.table == kosigns.CLASS_SIGNS:
        click.echo("\nderived table matches the stored table")
    else:
        click.echo("\nderived table DIFFERS from the stored table", err=True)
        sys.exit(1)


# --------------------------------------------------------------------------
# product
# --------------------------------------------------------------------------


@cli.command()
@click.argument("class_i")
@click.argument("class_j")
@click.option("--convention", type=click.Choice(["first", "second"]), default=None,
              help="Graded sign convention (even-even pairs; mixed pairs are fixed by order).")
@click.option("--traditional", is_flag=True, help="Use the ungraded prescription instead.")
@click.option("--dirac", type=click.Choice(["D", "Dtilde"]), default="D",
              help="Dirac choice for --traditional.")
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON report.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the product triple as JSON to this path.")
def product(class_i, class_j, convention, traditional, dirac, as_json, out):
    """Build exemplars for two classes and form their product.

    Prints predicted vs extracted signs and the resulting class, or the
    structured failure. Examples:

        kospectral product 2_U 6_U
        kospectral product 1_U 1_U --json
        kospectral product 2_U 2_U --traditional --dirac D
    """
    ci, cj = _parse_class(class_i), _parse_class(class_j)
    ti, tj = exemplars.build_exemplar(ci), exemplars.build_exemplar(cj)

    if traditional:
        # classic-sign exemplars: the traditional prescription predates the
        # upper/lower split, so map through the classic representatives
        ti = exemplars.build_exemplar(kosigns.CLASSIC_CLASS[ci.dim])
        tj = exemplars.build_exemplar(kosigns.CLASSIC_CLASS[cj.dim])
        choice = products.DiracChoice.D if dirac == "D" else products.DiracChoice.D_TILDE
        try:
            report = products.traditional_product(ti, tj, choice)
        except products.OddFirstFactorError as e:
            click.echo(f"undefined: {e}", err=True)
            sys.exit(1)
        except products.OddSecondFactorError as e:
            click.echo(f"undefined: {e}", err=True)
            sys.exit(1)
        except products.UndefinedProductOperatorError as e:
            click.echo(f"undefined product: violated relation {e.relation} ({e.detail})", err=True)
            sys.exit(1)
        doc = report.to_json()
        doc["prescription"] = "traditional"
        doc["dirac_choice"] = dirac
    else:
        if convention is None:
            conv = products.mixed_parity_convention(ti, tj)
        else:
            conv = (products.KozulConvention.FIRST if convention == "first"
                    else products.KozulConvention.SECOND)
        try:
            report = products.graded_product(ti, tj, conv)
        except VariantMismatchError as e:
            click.echo(f"variant mismatch: {e}", err=True)
            sys.exit(1)
        except products.UnsupportedConventionError as e:
            raise click.UsageError(str(e))
        doc = report.to_json()
        doc["prescription"] = "graded"

    doc["pair"] = [str(ci), str(cj)]
    doc["checks"] = {"predicted_equals_extracted": report.predicted == report.extracted}
    if out:
        with open(out, "w") as fh:
            json.dump(triples.triple_to_json(report.result), fh, indent=2)
        click.echo(f"product triple written to {out}", err=True)
    if as_json:
        click.echo(json.dumps(doc, indent=2))
    else:
        click.echo(f"pair:       {doc['pair'][0]} x {doc['pair'][1]}  ({doc['prescription']})")
        click.echo(f"hilbert:    {report.result.hilbert_dim}")
        click.echo(f"predicted:  {report.predicted}")
        click.echo(f"extracted:  {report.extracted}")
        click.echo(f"class:      {report.ko_class}")


# --------------------------------------------------------------------------
# exemplar
# --------------------------------------------------------------------------


@cli.command()
@click.argument("ko_class")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the triple as JSON to this path (default: stdout).")
def exemplar(ko_class, out):
    """Build the catalog triple for one class and serialize it."""
    c = _parse_class(ko_class)
    t, info = exemplars.build_exemplar_info(c)
    got = triples.validate(t)
    click.echo(f"class:          {got}", err=True)
    click.echo(f"hilbert dim:    {t.hilbert_dim}", err=True)
    click.echo(f"generators:     {info.gamma_count}", err=True)
    click.echo(f"real structure: {info.pauli_name} (phase {info.pauli_phase}) o cc", err=True)
    if info.chirality_phase is not None:
        click.echo(f"grading phase:  {info.chirality_phase}", err=True)
    doc = triples.triple_to_json(t)
    if out:
        with open(out, "w") as fh:
            json.dump(doc, fh, indent=2)
        click.echo(f"written to {out}", err=True)
    else:
        click.echo(json.dumps(doc, indent=2))
    if got != c:
        sys.exit(1)


# --------------------------------------------------------------------------
# sweep
# --------------------------------------------------------------------------


_CATALOG = None


def _catalog():
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = exemplars.exemplar_catalog()
    return _CATALOG


def _sweep_pair(task: tuple[str, str, str | None]) -> tuple[str, bool]:
    """One graded-product check; picklable for the process pool."""
    ci, cj = KOClass.parse(task[0]), KOClass.parse(task[1])
    conv = {None: None, "first": products.KozulConvention.FIRST,
            "second": products.KozulConvention.SECOND}[task[2]]
    cat = _catalog()
    ti, tj = cat[ci], cat[cj]
    name = f"graded {ci} x {cj}" + (f" ({task[2]})" if task[2] else "")
    try:
        report = products.graded_product(
            ti, tj, conv if conv is not None else products.mixed_parity_convention(ti, tj))
    except VariantMismatchError:
        return name, ci.variant != cj.variant
    except Exception:
        return name, False
    want = kosigns.predict_class(ci, cj)
    return name, ci.variant == cj.variant and report.ko_class == want


def _graded_tasks() -> list[tuple[str, str, str | None]]:
    tasks = []
    for ci in kosigns.all_classes():
        for cj in kosigns.all_classes():
            if ci.parity is Parity.EVEN and cj.parity is Parity.EVEN:
                tasks.append((str(ci), str(cj), "first"))
                tasks.append((str(ci), str(cj), "second"))
            else:
                tasks.append((str(ci), str(cj), None))
    return tasks


@cli.command()
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON report.")
@click.option("--parallel", type=int, default=0, metavar="N",
              help="Run the product grid on N worker processes.")
@click.option("--verbose", is_flag=True, help="Print one line per check, not only failures.")
def sweep(as_json, parallel, verbose):
    """Run the full verification sweep.

    Covers the complete product grid (both conventions where the pair
    admits a choice), the convention-equivalence and Dirac-square checks,
    the traditional failure matrix, sign-level associativity over all
    same-variant class triples, and sampled operator-level associativity.
    Exit status 0 iff everything matches the predictions.
    """
    rep = RunReport("sweep")
    cat = _catalog()

    tasks = _graded_tasks()
    if parallel > 0:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(_sweep_pair, tasks, chunksize=8))
    else:
        results = [_sweep_pair(t) for t in tasks]
    for name, ok in sorted(results):
        rep.add(name, ok)

    evens = [c for c in kosigns.all_classes() if c.parity is Parity.EVEN]
    for ci in evens:
        for cj in evens:
            if ci.variant != cj.variant:
                continue
            eqv = products.check_convention_equivalence(cat[ci], cat[cj])
            rep.add(f"unitary equivalence {ci} x {cj}", eqv.holds)
            for conv in (products.KozulConvention.FIRST, products.KozulConvention.SECOND):
                r = products.graded_product(cat[ci], cat[cj], conv)
                rep.add(f"dirac square {ci} x {cj} ({conv.value})",
                        products.check_dirac_square(cat[ci], cat[cj], r))

    for di in range(8):
        for dj in range(8):
            for choice in (products.DiracChoice.D, products.DiracChoice.D_TILDE):
                name = f"traditional {di} x {dj} ({choice.value})"
                ti = cat[kosigns.CLASSIC_CLASS[di]]
                tj = cat[kosigns.CLASSIC_CLASS[dj]]
                first_odd = choice is products.DiracChoice.D and di % 2 == 1
                second_odd = choice is products.DiracChoice.D_TILDE and dj % 2 == 1
                try:
                    products.traditional_product(ti, tj, choice)
                    outcome = "defined"
                except (products.OddFirstFactorError, products.OddSecondFactorError):
                    outcome = "no-grading"
                except products.UndefinedProductOperatorError:
                    outcome = "undefined"
                if first_odd or second_odd:
                    rep.add(name, outcome == "no-grading")
                else:
                    want = products.traditional_expected_defined(ti, tj, choice)
                    rep.add(name, outcome == ("defined" if want else "undefined"))

    sign_assoc_ok = True
    for variant in ("U", "L"):
        cl = [c for c in kosigns.all_classes() if c.variant == variant]
        for a in cl:
            for b in cl:
                for c in cl:
                    ab = kosigns.predict_class(a, b)
                    bc = kosigns.predict_class(b, c)
                    if kosigns.predict_class(ab, c) != kosigns.predict_class(a, bc):
                        sign_assoc_ok = False
    rep.add("sign-level associativity (all same-variant triples)", sign_assoc_ok)

    triples_sampled = _associativity_sample()
    for (ca, cb, cc) in triples_sampled:
        for conv in (products.KozulConvention.FIRST, products.KozulConvention.SECOND):
            res = products.check_operator_associativity(cat[ca], cat[cb], cat[cc], conv)
            rep.add(f"operator associativity {ca} x {cb} x {cc} ({conv.value})", res.holds)

    if as_json:
        click.echo(json.dumps(rep.to_json(), indent=2))
    else:
        rep.echo_summary(verbose=verbose)
    sys.exit(rep.exit_status)


def _associativity_sample(limit_dim: int = 128) -> list[tuple[KOClass, KOClass, KOClass]]:
    """Even-class triples (same variant) whose product space stays small."""
    cat = _catalog()
    out = []
    for variant in ("U", "L"):
        evens = [c for c in kosigns.all_classes()
                 if c.parity is Parity.EVEN and c.variant == variant]
        for ca in evens:
            for cb in evens:
                for cc in evens:
                    size = (cat[ca].hilbert_dim * cat[cb].hilbert_dim * cat[cc].hilbert_dim)
                    if size <= limit_dim:
                        out.append((ca, cb, cc))
    return out


# --------------------------------------------------------------------------
# dga-check
# --------------------------------------------------------------------------


@cli.command("dga-check")
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON report.")
@click.option("--verbose", is_flag=True, help="Print one line per check.")
def dga_check(as_json, verbose):
    """Validate the exemplar star-DGA, its tensor squares under both sign
    conventions, and the triple-product reassociation."""
    rep = RunReport("dga-check")
    ex = dga_mod.exterior_example()
    r = dga_mod.validate_dga(ex)
    rep.add("exemplar axioms", r.all_ok)
    rep.add("exemplar global sign +1", r.global_sign == +1)
    for conv in (products.KozulConvention.FIRST, products.KozulConvention.SECOND):
        prod = dga_mod.dga_tensor(ex, ex, conv)
        rp = dga_mod.validate_dga(prod)
        rep.add(f"tensor square axioms ({conv.value})", rp.all_ok)
        rep.add(f"tensor square sign ({conv.value})", rp.global_sign == +1)
        rep.add(f"reassociation ({conv.value})",
                dga_mod.reassociation_matches(ex, ex, ex, conv))
    if as_json:
        click.echo(json.dumps(rep.to_json(), indent=2))
    else:
        rep.echo_summary(verbose=verbose)
    sys.exit(rep.exit_status)


def main():
    cli()


if __name__ == "__main__":
    main()

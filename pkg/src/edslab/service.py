"""HTTP service wrapping the library.

Request models take the same literals as the CLI; responses mirror the
JSON shapes of the corresponding subcommands.  Run with
``uvicorn edslab.service:app``.
"""

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import construct as construct_mod
from . import divgraph, golden, lucas
from .apparition import rank_composite, regularity
from .eds import EdsContext
from .errors import EdsLabError, PreconditionError, VerificationError
from .literals import format_curve, format_point, parse_curve, parse_point
from .numutil import factorize

app = FastAPI(title="edslab", version="0.1.0")


class ContextRequest(BaseModel):
    curve: str = Field(description="curve literal [a1,a2,a3,a4,a6]")
    point: str = Field(description="point literal (x,y)")
    singular: bool = False


class TermsRequest(ContextRequest):
    count: int = Field(default=20, ge=1, le=2000)
    mod: int | None = Field(default=None, ge=1)


class DivsetRequest(ContextRequest):
    bound: int = Field(default=100, ge=1, le=10**6)
    method: str = Field(default="auto", pattern="^(auto|fast|exact)$")


class ArrowsRequest(ContextRequest):
    bound: int = Field(default=100, ge=1, le=10**6)
    generalized: bool = False


class RankRequest(ContextRequest):
    modulus: int = Field(ge=1)


class LucasRequest(BaseModel):
    a: int
    b: int
    bound: int = Field(default=100, ge=1, le=10**5)


class ConstructRequest(BaseModel):
    prescriptions: list[tuple[int, int, int]] = Field(
        description="list of (p, n, k) with #E(F_p) = k*n and point order n"
    )
    symmetric: bool = False


def _context(req: ContextRequest) -> EdsContext:
    curve = parse_curve(req.curve, allow_singular=req.singular)
    point = parse_point(req.point)
    return EdsContext(curve, point, check_nontorsion=not req.singular)


def _wrap(fn):
    try:
        return fn()
    except PreconditionError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except VerificationError as exc:
        raise HTTPException(status_code=500, detail=f"verification: {exc}") from exc
    except EdsLabError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.post("/info")
def info(req: ContextRequest):
    def run():
        ctx = _context(req)
        E = ctx.curve
        data = {
            "curve": format_curve(E),
            "point": format_point(ctx.point),
            "disc": E.disc,
            "singular": E.is_singular,
        }
        if not E.is_singular:
            data["bad_primes"] = {
                str(p): E.reduction_kind(p) for p, _ in factorize(abs(E.disc))
            }
            rep = regularity(ctx)
            data["regularity"] = {
                "ir_flags": list(rep.ir_flags),
                "two_regular": rep.two_regular,
                "regular": rep.regular,
            }
        return data

    return _wrap(run)


@app.post("/terms")
def terms(req: TermsRequest):
    def run():
        ctx = _context(req)
        values = ctx.terms(req.count)
        if req.mod is not None:
            values = [v % req.mod for v in values]
        return {"count": req.count, "mod": req.mod, "terms": values}

    return _wrap(run)


@app.post("/divset")
def divset(req: DivsetRequest):
    def run():
        ctx = _context(req)
        s = divgraph.enumerate_set(ctx, req.bound, req.method)
        return {"bound": req.bound, "elements": s.elements}

    return _wrap(run)


@app.post("/arrows")
def arrows(req: ArrowsRequest):
    def run():
        ctx = _context(req)
        return divgraph.graph_report(ctx, req.bound, generalized=req.generalized)

    return _wrap(run)


@app.post("/rank")
def rank(req: RankRequest):
    def run():
        ctx = _context(req)
        rec = rank_composite(ctx, req.modulus)
        return {"modulus": rec.modulus, "rank": rec.rank, "method": rec.method}

    return _wrap(run)


@app.post("/lucas/divset")
def lucas_divset(req: LucasRequest):
    def run():
        return {"bound": req.bound,
                "elements": lucas.lucas_divset(req.a, req.b, req.bound)}

    return _wrap(run)


@app.post("/construct")
def construct(req: ConstructRequest):
    def run():
        data = [construct_mod.PrescribedDatum(p, n, k)
                for p, n, k in req.prescriptions]
        result = construct_mod.crt_curve(data, symmetric=req.symmetric)
        report = construct_mod.verify_construction(result)
        return {
            "curve": format_curve(result.curve),
            "point": format_point(result.point),
            "records": result.records,
            "verification": report,
        }

    return _wrap(run)


@app.get("/verify-paper")
def verify_paper(filter: str | None = None):
    results = golden.run_checks(filter)
    return {
        "results": [
            {"name": name, "ok": ok, "detail": detail}
            for name, ok, detail in results
        ],
        "all_ok": all(ok for _, ok, _ in results) and bool(results),
    }

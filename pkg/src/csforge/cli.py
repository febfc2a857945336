"""Command-line front end: encode, verify, enumerate, papr, simulate.

Exit codes: 0 success, 1 verification failure, 2 input validation error,
3 resource guard exceeded.  JSON documents carry ``schema: 1`` and floats
serialize via shortest round-trip representation, so records re-read from
disk are bit-identical to what was written.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import qam
from .analysis import is_gcp, papr_bound_db, papr_oversampled_db
from .encoder import EncoderParams, SeedPair, encode_pair, known_seed
from .sequences import ComplexSequence
from .simulate import MAX_CODEBOOK, CodebookLimitError, min_distance_sim

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_GUARD = 3

_SIM_MAX_VARS = 4


class InputError(Exception):
    pass


class GuardError(Exception):
    pass


# -- JSON forms ---------------------------------------------------------------


def _complex_to_json(values) -> dict:
    arr = np.asarray(values, dtype=complex)
    return {"re": [float(x) for x in arr.real], "im": [float(x) for x in arr.imag]}


def _complex_from_json(obj) -> np.ndarray:
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad complex array: {exc}") from exc
    if re.shape != im.shape:
        raise InputError("re/im arrays differ in length")
    return re + 1j * im


def params_to_dict(p: EncoderParams) -> dict:
    return {
        "m": p.m,
        "H": p.H,
        "pi": list(p.pi),
        "e": list(p.e),
        "e_prime": p.e_prime,
        "k": list(p.k),
        "k_prime": p.k_prime,
        "k_dprime": p.k_dprime,
        "d": list(p.d),
        "seed": {"a": _complex_to_json(p.seed.a.values), "b": _complex_to_json(p.seed.b.values)},
    }


def params_from_dict(doc: dict) -> EncoderParams:
    try:
        m = int(doc["m"])
        H = int(doc["H"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"params need integer m and H: {exc}") from exc
    seed_doc = doc.get("seed")
    if seed_doc is None:
        seed = known_seed(1)
    else:
        seed = SeedPair(_complex_from_json(seed_doc["a"]), _complex_from_json(seed_doc["b"]))
    try:
        return EncoderParams(
            m=m,
            H=H,
            pi=tuple(doc.get("pi", range(1, m + 1))),
            e=tuple(doc.get("e", [0.0] * m)),
            e_prime=float(doc.get("e_prime", 0.0)),
            k=tuple(doc.get("k", [0.0] * m)),
            k_prime=float(doc.get("k_prime", 0.0)),
            k_dprime=float(doc.get("k_dprime", 0.0)),
            d=tuple(doc.get("d", [0] * m)),
            seed=seed,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def sequence_record(seq_id: str, seq: ComplexSequence, oversample: int = 16,
                    gcp_residual: float | None = None, params: dict | None = None) -> dict:
    papr_db, _ = papr_oversampled_db(seq, oversample)
    record = {
        "schema": 1,
        "id": seq_id,
        "length": len(seq),
        "values": _complex_to_json(seq.values),
        "support": [int(i) for i in seq.support],
        "clusters": [{"start": a, "length": b - a} for a, b in seq.clusters()],
        "papr_db": papr_db,
    }
    if gcp_residual is not None:
        record["gcp_residual"] = gcp_residual
    if params is not None:
        record["params"] = params
    return record


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _emit(doc, out_path: str | None) -> None:
    text = json.dumps(doc, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# -- argument helpers ---------------------------------------------------------


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise InputError(f"bad integer list {text!r}") from exc


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise InputError(f"bad number list {text!r}") from exc


def _seed_from_args(args) -> SeedPair | None:
    if getattr(args, "seed_pair", None):
        doc = _load_json(args.seed_pair)
        try:
            return SeedPair(_complex_from_json(doc["a"]), _complex_from_json(doc["b"]))
        except (KeyError, ValueError) as exc:
            raise InputError(f"bad seed pair: {exc}") from exc
    if getattr(args, "seed_trivial", False):
        return known_seed(1)
    return None


def _rule_spec_from_args(args) -> qam.RuleSpec:
    indices = _int_list(args.indices) if args.indices else ()
    fields: dict = {"rule": args.rule}
    if args.rule in ("green", "yellow"):
        if len(indices) != 2:
            raise InputError(f"{args.rule} rule needs --indices u,v")
        fields.update(u=indices[0], v=indices[1])
    elif args.rule == "blue":
        if len(indices) != 3:
            raise InputError("blue rule needs --indices u,v,w")
        fields.update(u=indices[0], v=indices[1], w=indices[2])
    elif args.rule == "cyan":
        if len(indices) != 4:
            raise InputError("cyan rule needs --indices u,t,v,w")
        fields.update(u=indices[0], t=indices[1], v=indices[2], w=indices[3])
    elif args.rule == "orange":
        if len(indices) != 2:
            raise InputError("orange rule needs --indices u,v")
        fields.update(u=indices[0], v=indices[1])
    else:
        raise InputError(f"unknown rule {args.rule!r}")
    fields.update(
        ell=args.ell if args.ell is not None else (args.m or 1),
        sign_a=args.sign,
        sign_b=args.sign_b,
        z=args.z,
    )
    return qam.RuleSpec(**fields)


def _params_from_args(args) -> EncoderParams:
    if args.params:
        doc = _load_json(args.params)
        return params_from_dict(doc)
    if args.rule:
        if not args.m:
            raise InputError("--rule needs --m")
        if not args.s:
            raise InputError("--rule needs --s")
        spec = _rule_spec_from_args(args)
        pi = _int_list(args.pi) if args.pi else None
        try:
            return qam.rule_params(spec, args.s, args.m, pi=pi, seed=_seed_from_args(args))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    if not args.m or not args.H:
        raise InputError("need --params, --rule, or both --m and --H")
    m = args.m
    try:
        return EncoderParams(
            m=m,
            H=args.H,
            pi=_int_list(args.pi) if args.pi else tuple(range(1, m + 1)),
            e=_float_list(args.e) if args.e else (0.0,) * m,
            e_prime=args.e_prime,
            k=_float_list(args.k) if args.k else (0.0,) * m,
            k_prime=args.k_prime,
            k_dprime=args.k_dprime,
            d=_int_list(args.d) if args.d else (0,) * m,
            seed=_seed_from_args(args) or known_seed(1),
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# -- subcommands --------------------------------------------------------------


def cmd_encode(args) -> int:
    params = _params_from_args(args)
    result = encode_pair(params)
    check = is_gcp(result.c, result.d)
    doc = params_to_dict(params)
    records = [
        sequence_record("c", result.c, args.oversample, check.residual, doc),
        sequence_record("d", result.d, args.oversample, check.residual, doc),
    ]
    _emit(records, args.out)
    return EXIT_OK


def _records_from_file(path: str) -> list[dict]:
    doc = _load_json(path)
    if isinstance(doc, dict):
        doc = [doc]
    if not isinstance(doc, list) or not doc:
        raise InputError("expected a sequence record or a list of records")
    for rec in doc:
        if not isinstance(rec, dict) or "values" not in rec:
            raise InputError("record missing 'values'")
    return doc


def cmd_verify(args) -> int:
    records = _records_from_file(args.file)
    seqs = [ComplexSequence(_complex_from_json(rec["values"])) for rec in records]
    report: dict = {"schema": 1, "records": []}
    for rec, seq in zip(records, seqs):
        papr_db, _ = papr_oversampled_db(seq, args.oversample)
        report["records"].append(
            {
                "id": rec.get("id"),
                "length": len(seq),
                "clusters": [{"start": a, "length": b - a} for a, b in seq.clusters()],
                "gaps": _gaps(seq),
                "papr_db": papr_db,
                "papr_bound_db": papr_bound_db(seq),
            }
        )
    ok = True
    if len(seqs) == 2:
        check = is_gcp(seqs[0], seqs[1], args.tol)
        report["gcp_residual"] = check.residual
        report["gcp_ok"] = check.ok
        ok = check.ok
    _emit(report, args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def _gaps(seq: ComplexSequence) -> list[dict]:
    clusters = seq.clusters()
    return [
        {"start": prev_stop, "length": start - prev_stop}
        for (_, prev_stop), (start, _) in zip(clusters, clusters[1:])
    ]


def cmd_enumerate(args) -> int:
    n_class = "N=1" if args.N == 1 else "N>1"
    count = qam.count_sequences(args.rule, args.s, args.m, n_class)
    report = {
        "schema": 1,
        "rule": args.rule,
        "s": args.s,
        "m": args.m,
        "N": args.N,
        "n_class": n_class,
        "unit": count.unit,
        "units": count.units,
        "count": count.count,
        "bits": count.count.bit_length() - 1 if count.count > 0 else 0,
        "length": args.N * 2**args.m,
    }
    if args.dedup:
        if args.rule == "total":
            raise InputError("--dedup applies to a single rule")
        if args.N != 1:
            raise InputError("--dedup runs on the length-1 seed family only")
        distinct = qam.distinct_sequences(args.rule, args.s, args.m)
        report["dedup"] = distinct
        report["dedup_matches_formula"] = distinct == count.count
    _emit(report, args.out)
    return EXIT_OK


def cmd_papr(args) -> int:
    records = _records_from_file(args.file)
    if not 0 <= args.index < len(records):
        raise InputError(f"--index {args.index} out of range for {len(records)} records")
    seq = ComplexSequence(_complex_from_json(records[args.index]["values"]))
    papr_db, trace = papr_oversampled_db(seq, args.oversample)
    report = {
        "schema": 1,
        "length": len(seq),
        "oversample": args.oversample,
        "papr_db": papr_db,
        "papr_bound_db": papr_bound_db(seq),
        "peak_power": trace.peak,
        "mean_power": trace.mean,
    }
    if args.out:
        trace.write_csv(args.out)
        report["trace_csv"] = args.out
    print(json.dumps(report, indent=2))
    return EXIT_OK


def _codebook_from_args(args) -> np.ndarray:
    if args.codebook:
        doc = _load_json(args.codebook)
        if isinstance(doc, dict) and "sequences" in doc:
            entries = doc["sequences"]
        elif isinstance(doc, list):
            entries = [rec.get("values", rec) for rec in doc]
        else:
            raise InputError("codebook file needs 'sequences' or a record list")
        words = [_complex_from_json(e) for e in entries]
        return np.asarray(words, dtype=complex)
    if args.rule:
        if not args.m or not args.s:
            raise InputError("--rule codebooks need --m and --s")
        if args.m > _SIM_MAX_VARS:
            raise GuardError(f"simulation limited to m <= {_SIM_MAX_VARS}")
        seen: set[bytes] = set()
        words: list[np.ndarray] = []
        for _, values in qam.enumerate_rule(args.rule, args.s, args.m):
            key = qam.sequence_key(values)
            if key not in seen:
                seen.add(key)
                words.append(values)
            if len(words) > MAX_CODEBOOK:
                raise GuardError(f"codebook exceeds {MAX_CODEBOOK} sequences")
        return np.asarray(words, dtype=complex)
    raise InputError("need --codebook or --rule")


def cmd_simulate(args) -> int:
    codebook = _codebook_from_args(args)
    if len(codebook) > MAX_CODEBOOK:
        raise GuardError(f"codebook of {len(codebook)} exceeds {MAX_CODEBOOK}")
    ebn0 = tuple(float(x) for x in args.ebn0.split(","))
    try:
        report = min_distance_sim(codebook, ebn0, args.trials, args.rng_seed)
    except CodebookLimitError as exc:
        raise GuardError(str(exc)) from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(report.to_dict(), args.out)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csforge",
        description="Synthesize and verify complementary sequence pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common_params(p):
        p.add_argument("--params", help="JSON parameter file")
        p.add_argument("--rule", choices=qam.RULES, help="QAM synthesis rule")
        p.add_argument("--s", type=int, help="lattice size parameter (4s^2 points)")
        p.add_argument("--indices", help="rule lattice indices, e.g. 2,1,4,2")
        p.add_argument("--ell", type=int, help="rule step index (default m)")
        p.add_argument("--sign", type=int, default=1, choices=(1, -1))
        p.add_argument("--sign-b", dest="sign_b", type=int, default=1, choices=(1, -1))
        p.add_argument("--z", type=int, default=0, help="quadrant phase offset")
        p.add_argument("--m", type=int)
        p.add_argument("--H", type=int)
        p.add_argument("--pi", help="bit order, e.g. 2,1,3")
        p.add_argument("--e", help="amplitude exponents")
        p.add_argument("--e-prime", dest="e_prime", type=float, default=0.0)
        p.add_argument("--k", help="phase steps")
        p.add_argument("--k-prime", dest="k_prime", type=float, default=0.0)
        p.add_argument("--k-dprime", dest="k_dprime", type=float, default=0.0)
        p.add_argument("--d", help="zero-padding amounts")
        p.add_argument("--seed-pair", dest="seed_pair", help="JSON seed pair file")
        p.add_argument("--seed-trivial", dest="seed_trivial", action="store_true",
                       help="use the length-1 seed (1),(1)")
        p.add_argument("--out", help="write output to a file instead of stdout")

    enc = sub.add_parser("encode", help="synthesize a pair from parameters")
    add_common_params(enc)
    enc.add_argument("--oversample", type=int, default=16)
    enc.set_defaults(func=cmd_encode)

    ver = sub.add_parser("verify", help="re-check a stored pair or sequence")
    ver.add_argument("file")
    ver.add_argument("--tol", type=float, default=1e-9)
    ver.add_argument("--oversample", type=int, default=16)
    ver.add_argument("--out")
    ver.set_defaults(func=cmd_verify)

    enu = sub.add_parser("enumerate", help="family sizes and uncoded bits")
    enu.add_argument("--rule", default="total", choices=qam.RULES + ("total",))
    enu.add_argument("--s", type=int, required=True)
    enu.add_argument("--m", type=int, required=True)
    enu.add_argument("--N", type=int, default=1, help="seed length class")
    enu.add_argument("--dedup", action="store_true",
                     help="also count distinct sequences exhaustively")
    enu.add_argument("--out")
    enu.set_defaults(func=cmd_enumerate)

    pap = sub.add_parser("papr", help="peak power report and envelope trace")
    pap.add_argument("file")
    pap.add_argument("--index", type=int, default=0, help="record index in the file")
    pap.add_argument("--oversample", type=int, default=16)
    pap.add_argument("--out", help="write the power trace CSV here")
    pap.set_defaults(func=cmd_papr)

    sim = sub.add_parser("simulate", help="AWGN minimum-distance detection")
    sim.add_argument("--codebook", help="JSON codebook file")
    sim.add_argument("--rule", choices=qam.RULES)
    sim.add_argument("--s", type=int)
    sim.add_argument("--m", type=int)
    sim.add_argument("--ebn0", required=True, help="Eb/N0 grid in dB, e.g. 0,2,inf")
    sim.add_argument("--trials", type=int, default=10000)
    sim.add_argument("--rng-seed", dest="rng_seed", type=int, default=0)
    sim.add_argument("--out")
    sim.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except qam.EnumerationLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except CodebookLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""In-process g-server store and full retrieval sessions.

Server j holds the columns of the stored rows that fall in its local group.
Only the first r of them (the systematic part) ever enter a response.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import linalg
from .errors import (
    DimensionMismatch,
    FormatError,
    IndexOutOfRange,
    LrsPirError,
    RetrievalFailed,
)
from .mrlrc import MrLrc, encode_global, parse_mrlrc_descriptor
from .pir import (
    PirParams,
    PirScheme,
    audit_privacy_exact,
    colluder_query_distribution,
    rate,
    server_respond,
)


@dataclass(frozen=True, eq=False)
class Database:
    mrlrc: MrLrc
    m: int
    b: int
    t: int | None
    shares: list = field(repr=False)    # per server: bm x (r+delta-1)
    z_shares: list = field(repr=False)  # per server: bm x r

    def server_rows(self) -> list[list[int]]:
        """Stored codewords y (bm x n), reassembled from the shares."""
        rows = []
        for x in range(self.m * self.b):
            rows.append([s for j in range(self.mrlrc.g) for s in self.shares[j][x]])
        return rows

    def Z(self) -> list[list[int]]:
        return [[s for j in range(self.mrlrc.g) for s in self.z_shares[j][x]] for x in range(self.m * self.b)]


def init_database(mrlrc: MrLrc, files, t: int | None = None) -> Database:
    """Encode every row of every b x k file and split the codewords by group."""
    if not files:
        raise DimensionMismatch("need at least one file")
    b = len(files[0])
    if any(len(f) != b for f in files):
        raise DimensionMismatch("files must share the same number of rows")
    X = [row for f in files for row in f]
    Y, _ = encode_global(mrlrc, X)
    return _from_rows(mrlrc, len(files), b, t, Y)


def _from_rows(mrlrc, m, b, t, Y):
    shares, z = [], []
    for grp in mrlrc.groups:
        shares.append([[row[p] for p in grp] for row in Y])
        z.append([[row[p] for p in grp[: mrlrc.r]] for row in Y])
    return Database(mrlrc, m, b, t, shares, z)


def random_files(mrlrc: MrLrc, m: int, b: int, rng) -> list[list[list[int]]]:
    K = mrlrc.field
    return [[[K.random(rng) for _ in range(mrlrc.k)] for _ in range(b)] for _ in range(m)]


@dataclass
class RoundRecord:
    u: int
    queries: list
    responses: list
    syndrome: list
    chunks: list


@dataclass
class Transcript:
    params: PirParams
    seed: int
    file_index: int
    rounds: list = field(default_factory=list)
    downloaded: int = 0
    uploaded: int = 0

    @property
    def measured_rate(self):
        from fractions import Fraction

        p = self.params
        return Fraction(p.b * p.k, self.downloaded)


def run_retrieval(db: Database, i: int, seed: int, t: int | None = None):
    """Privately fetch file i (0-based); returns (file, transcript)."""
    t = db.t if t is None else t
    if t is None:
        raise LrsPirError("collusion parameter t is not set")
    scheme = PirScheme(db.mrlrc.outer, t, db.m)
    p = scheme.params
    if p.b != db.b:
        raise DimensionMismatch(f"stored files have {db.b} rows but the scheme folds b={p.b}")
    if not 0 <= i < p.m:
        raise IndexOutOfRange(f"file index {i} outside 0..{p.m - 1}")
    rng = random.Random(seed)
    tr = Transcript(p, seed, i)
    chunks = []
    for u in range(p.s):
        try:
            qr = scheme.gen_queries(i, u, rng)
            responses = [server_respond(scheme.basis, db.z_shares[j], qr.queries[j]) for j in range(p.g)]
            total = [x for resp in responses for x in resp]
            res = scheme.reconstruct_round(total, u)
        except LrsPirError as exc:
            raise RetrievalFailed(f"iteration {u}: {exc}", iteration=u) from exc
        tr.uploaded += sum(len(qj) for qj in qr.queries)
        tr.downloaded += len(total)
        tr.rounds.append(RoundRecord(u, qr.queries, responses, res.syndrome, res.chunks))
        chunks.append(res.chunks)
    try:
        recovered = scheme.reconstruct_file(chunks)
    except LrsPirError as exc:
        raise RetrievalFailed(f"file reconstruction: {exc}") from exc
    return recovered, tr


@dataclass
class AdversaryView:
    T: tuple
    slices: list  # per round: {server: query}
    verdict: bool
    distribution_equal: bool | None = None


def adversary_view(db: Database, transcript: Transcript, T, exhaustive: bool = False) -> AdversaryView:
    """What the colluding servers in T saw, plus the privacy verdict for T."""
    T = tuple(sorted(T))
    p = transcript.params
    slices = [{j: rec.queries[j] for j in T} for rec in transcript.rounds]
    if not T:
        return AdversaryView(T, slices, True)
    if len(T) > p.t:
        raise IndexOutOfRange(f"|T| = {len(T)} exceeds t = {p.t}")
    scheme = PirScheme(db.mrlrc.outer, p.t, p.m)
    verdict = audit_privacy_exact(p, scheme.mask_code, [T]).passed
    same = None
    if exhaustive:
        same = all(
            colluder_query_distribution(scheme, 0, u, T) == colluder_query_distribution(scheme, i, u, T)
            for u in range(p.s) for i in range(1, p.m)
        )
    return AdversaryView(T, slices, verdict, same)


def format_transcript(transcript: Transcript, K) -> str:
    p = transcript.params
    out = [f"# params {p.describe()}", f"seed={transcript.seed}", f"file={transcript.file_index}",
           f"rate={rate(p)}"]
    ser = K.serialize
    for rec in transcript.rounds:
        out.append(f"[iteration {rec.u}]")
        for j, qj in enumerate(rec.queries):
            blocks = [" ".join(ser(x) for x in qj[s:s + p.r]) for s in range(0, len(qj), p.r)]
            out.append(f"query {j}: " + " | ".join(blocks))
        for j, rj in enumerate(rec.responses):
            out.append(f"response {j}: " + " ".join(ser(x) for x in rj))
        out.append("syndrome: " + " ".join(ser(x) for x in rec.syndrome))
        out.append("chunks: " + " | ".join(" ".join(ser(x) for x in ch) for ch in rec.chunks))
    out.append(f"downloaded={transcript.downloaded}")
    out.append(f"uploaded={transcript.uploaded}")
    return "\n".join(out) + "\n"


def format_database(db: Database) -> str:
    K = db.mrlrc.field
    parts = [db.mrlrc.descriptor(), f"m={db.m}\nb={db.b}\n"]
    if db.t is not None:
        parts.append(f"t={db.t}\n")
    for j, share in enumerate(db.shares):
        parts.append(f"server={j}\n")
        parts.append(linalg.format_matrix(K, share, db.mrlrc.local.length))
    return "".join(parts)


def parse_database(text: str) -> Database:
    mrlrc, lines = parse_mrlrc_descriptor(text)
    kv = {}
    while lines and "=" in lines[0] and not lines[0].startswith("server="):
        key, val = lines.pop(0).split("=", 1)
        kv[key] = int(val)
    try:
        m, b = kv["m"], kv["b"]
    except KeyError as exc:
        raise FormatError(f"missing key {exc}") from None
    K = mrlrc.field
    shares = []
    for j in range(mrlrc.g):
        if not lines or lines.pop(0) != f"server={j}":
            raise FormatError(f"missing server={j} block")
        M, lines = linalg.read_matrix(K, lines)
        if len(M) != m * b:
            raise FormatError(f"server {j} holds {len(M)} rows, expected {m * b}")
        shares.append(M)
    Y = [[s for j in range(mrlrc.g) for s in shares[j][x]] for x in range(m * b)]
    return _from_rows(mrlrc, m, b, kv.get("t"), Y)


def format_files(K, files) -> str:
    """FileSet text: ``files=<m>`` then one matrix block per file."""
    out = [f"files={len(files)}\n"]
    for f in files:
        out.append(linalg.format_matrix(K, f))
    return "".join(out)


def parse_files(K, text: str):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("files="):
        raise FormatError("missing files= header")
    m = int(lines.pop(0).split("=", 1)[1])
    files = []
    for _ in range(m):
        M, lines = linalg.read_matrix(K, lines)
        files.append(M)
    if lines:
        raise FormatError("trailing lines after files")
    return files

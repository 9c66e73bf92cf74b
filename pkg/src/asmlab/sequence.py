"""DNA strings, k-mer spectra, and substring/superstring/repeat primitives.

Everything downstream (simulation, superstring search, graph construction)
speaks the vocabulary defined here. Sequences are single-stranded by design:
a k-mer and its reverse complement are distinct objects throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional

ALPHABET = "ACGT"
MAX_K = 31  # 2 bits per symbol keeps any k-mer in one 62-bit integer

_BITS = {"A": 0, "C": 1, "G": 2, "T": 3}
_CHARS = "ACGT"
_DELETE_ACGT = str.maketrans("", "", ALPHABET)

# byte value -> 2-bit code, 255 for anything outside the alphabet
_ENCODE = bytearray([255]) * 256
for _c, _v in _BITS.items():
    _ENCODE[ord(_c)] = _v


class DnaString(str):
    """A string validated to contain only A, C, G, T.

    Behaves like a plain ``str`` (slicing, searching, comparison); slices
    return plain ``str`` and can be re-wrapped when validation matters.
    The empty string is valid.
    """

    __slots__ = ()

    def __new__(cls, value: str = "") -> "DnaString":
        if value.__class__ is not cls:
            bad = str(value).translate(_DELETE_ACGT)
            if bad:
                pos = min(str(value).find(c) for c in set(bad))
                raise ValueError(
                    f"invalid symbol {value[pos]!r} at position {pos}; "
                    f"DNA strings may only contain {ALPHABET}"
                )
        return super().__new__(cls, value)

    def __repr__(self) -> str:
        return f"DnaString({str.__repr__(self)})"


@dataclass(frozen=True)
class ReadSet:
    """An ordered collection of reads.

    ``declared_read_length`` asserts that every read has a uniform length;
    construction fails if any read disagrees.
    """

    reads: tuple[DnaString, ...]
    declared_read_length: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "reads", tuple(DnaString(r) for r in self.reads))
        if self.declared_read_length is not None:
            for i, r in enumerate(self.reads):
                if len(r) != self.declared_read_length:
                    raise ValueError(
                        f"read {i} has length {len(r)}, "
                        f"declared read length is {self.declared_read_length}"
                    )

    @classmethod
    def of(cls, *reads: str, declared_read_length: Optional[int] = None) -> "ReadSet":
        return cls(tuple(DnaString(r) for r in reads), declared_read_length)

    def __len__(self) -> int:
        return len(self.reads)

    def __iter__(self) -> Iterator[DnaString]:
        return iter(self.reads)

    def __getitem__(self, i: int) -> DnaString:
        return self.reads[i]

    def require_nonempty(self, operation: str) -> None:
        if not self.reads:
            raise ValueError(f"{operation} requires a nonempty read set")


def encode_kmer(text: str) -> int:
    """Pack an A/C/G/T string of length <= 31 into a 2-bit-per-symbol integer."""
    value = 0
    for ch in text:
        code = _ENCODE[ord(ch)]
        if code == 255:
            raise ValueError(f"invalid symbol {ch!r} in k-mer {text!r}")
        value = (value << 2) | code
    return value


def decode_kmer(packed: int, k: int) -> str:
    """Inverse of :func:`encode_kmer` for a known length ``k``."""
    out = [""] * k
    for i in range(k - 1, -1, -1):
        out[i] = _CHARS[packed & 3]
        packed >>= 2
    return "".join(out)


@dataclass(frozen=True, order=False)
class Kmer:
    """A fixed-length DNA word in 2-bit packed form.

    For equal lengths the packed integers order exactly like the decoded
    strings (A<C<G<T), which keeps iteration deterministic and cheap.
    """

    packed: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= MAX_K:
            raise ValueError(f"k must be in [1, {MAX_K}], got {self.k}")
        if not 0 <= self.packed < (1 << (2 * self.k)):
            raise ValueError("packed value out of range for k")

    @classmethod
    def from_string(cls, text: str) -> "Kmer":
        if not 1 <= len(text) <= MAX_K:
            raise ValueError(f"k-mer length must be in [1, {MAX_K}], got {len(text)}")
        return cls(encode_kmer(text), len(text))

    def __str__(self) -> str:
        return decode_kmer(self.packed, self.k)

    def __lt__(self, other: "Kmer") -> bool:
        if self.k == other.k:
            return self.packed < other.packed
        return str(self) < str(other)

    def __le__(self, other: "Kmer") -> bool:
        return self == other or self < other

    def __gt__(self, other: "Kmer") -> bool:
        return other < self

    def __ge__(self, other: "Kmer") -> bool:
        return other <= self


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1 or k > MAX_K:
        raise ValueError(f"k must be an integer in [1, {MAX_K}], got {k!r}")


def packed_kmers(text: str, k: int) -> list[int]:
    """All k-mers of ``text`` in order, as packed integers (rolling encode)."""
    n = len(text)
    if n < k:
        return []
    mask = (1 << (2 * k)) - 1
    data = text.encode("ascii")
    out = []
    value = 0
    filled = 0
    for byte in data:
        code = _ENCODE[byte]
        if code == 255:
            raise ValueError(f"invalid symbol {chr(byte)!r} in sequence")
        value = ((value << 2) | code) & mask
        filled += 1
        if filled >= k:
            out.append(value)
    return out


@dataclass(frozen=True)
class KmerSpectrum:
    """The set of distinct k-mers of a string or read collection.

    Multiplicities count total (not distinct) occurrences; the set view
    used by the subset/equality checks ignores them.
    """

    k: int
    counts: dict[int, int]  # packed k-mer -> occurrence count

    def __len__(self) -> int:
        return len(self.counts)

    def __contains__(self, kmer) -> bool:
        return self._pack(kmer) in self.counts

    def _pack(self, kmer) -> int:
        if isinstance(kmer, Kmer):
            if kmer.k != self.k:
                return -1
            return kmer.packed
        if isinstance(kmer, str):
            if len(kmer) != self.k:
                return -1
            return encode_kmer(kmer)
        raise TypeError(f"expected Kmer or str, got {type(kmer).__name__}")

    def multiplicity(self, kmer) -> int:
        return self.counts.get(self._pack(kmer), 0)

    def total_count(self) -> int:
        return sum(self.counts.values())

    def kmers(self) -> list[Kmer]:
        """Distinct members in lexicographic order."""
        return [Kmer(p, self.k) for p in sorted(self.counts)]

    def strings(self) -> list[str]:
        return [decode_kmer(p, self.k) for p in sorted(self.counts)]

    def distinct_packed(self) -> frozenset[int]:
        return frozenset(self.counts)

    def same_members(self, other: "KmerSpectrum") -> bool:
        """Set equality, ignoring multiplicities."""
        return self.k == other.k and self.counts.keys() == other.counts.keys()

    def union(self, other: "KmerSpectrum") -> "KmerSpectrum":
        if self.k != other.k:
            raise ValueError(f"cannot union spectra with k={self.k} and k={other.k}")
        merged = dict(self.counts)
        for p, c in other.counts.items():
            merged[p] = merged.get(p, 0) + c
        return KmerSpectrum(self.k, merged)


def spectrum(s: str, k: int) -> KmerSpectrum:
    """The k-mer spectrum of a single string.

    Empty when ``len(s) < k``. Multiplicity of each member is its number of
    (possibly overlapping) occurrence positions in ``s``.
    """
    _check_k(k)
    counts: dict[int, int] = {}
    for p in packed_kmers(s, k):
        counts[p] = counts.get(p, 0) + 1
    return KmerSpectrum(k, counts)


def spectrum_of_set(reads: ReadSet | Iterable[str], k: int) -> KmerSpectrum:
    """Union of the per-read spectra; multiplicities sum across reads."""
    _check_k(k)
    counts: dict[int, int] = {}
    for r in reads:
        for p in packed_kmers(r, k):
            counts[p] = counts.get(p, 0) + 1
    return KmerSpectrum(k, counts)


def is_common_superstring(g: str, reads: ReadSet | Iterable[str]) -> bool:
    """True iff every read occurs contiguously in ``g``."""
    return all(r in g for r in reads)


class SubsetCheck(NamedTuple):
    """Outcome of a spectrum-containment check, with a witness on failure."""

    ok: bool
    missing_kmer: Optional[str]
    position: Optional[int]


def spectrum_subset_check(g: str, reads: ReadSet | Iterable[str], k: int) -> SubsetCheck:
    """Check that every k-mer of ``g`` occurs in some read.

    On failure, reports the leftmost offending k-mer and its 0-based
    position in ``g``.
    """
    _check_k(k)
    allowed = spectrum_of_set(reads, k).distinct_packed()
    for pos, p in enumerate(packed_kmers(g, k)):
        if p not in allowed:
            return SubsetCheck(False, decode_kmer(p, k), pos)
    return SubsetCheck(True, None, None)


class RepeatHit(NamedTuple):
    """A longest repeated substring: its length and two distinct start offsets."""

    length: int
    positions: tuple[int, int]


def _repeat_at_length(g: str, length: int) -> Optional[tuple[int, int]]:
    """First pair of positions sharing a substring of exactly ``length``, or None.

    Rabin-Karp style rolling hash with an exact comparison on candidate hits,
    so hash collisions cannot produce a false positive.
    """
    n = len(g)
    if length == 0 or n < length + 1:
        return None
    mod = (1 << 61) - 1
    base = 1_000_003
    top = pow(base, length - 1, mod)
    h = 0
    for ch in g[:length]:
        h = (h * base + ord(ch)) % mod
    seen: dict[int, list[int]] = {h: [0]}
    for start in range(1, n - length + 1):
        h = ((h - ord(g[start - 1]) * top) * base + ord(g[start + length - 1])) % mod
        bucket = seen.get(h)
        if bucket is not None:
            piece = g[start:start + length]
            for prev in bucket:
                if g[prev:prev + length] == piece:
                    return (prev, start)
            bucket.append(start)
        else:
            seen[h] = [start]
    return None


def longest_repeat(g: str) -> Optional[RepeatHit]:
    """A longest substring occurring at two or more positions of ``g``.

    Occurrences may overlap each other (so ``AAAA`` has the repeat ``AAA``).
    Returns None when every symbol of ``g`` is distinct. Of all longest
    repeats, the reported pair is the one whose second occurrence is
    leftmost (ties broken by the scan order of the hash pass).
    """
    n = len(g)
    if n < 2:
        return None
    lo, hi = 1, n - 1  # repeat length bounds; length n impossible
    best: Optional[tuple[int, tuple[int, int]]] = None
    while lo <= hi:
        mid = (lo + hi) // 2
        hit = _repeat_at_length(g, mid)
        if hit is not None:
            best = (mid, hit)
            lo = mid + 1
        else:
            hi = mid - 1
    if best is None:
        return None
    return RepeatHit(best[0], best[1])


def max_overlap(a: str, b: str) -> int:
    """Length of the longest suffix of ``a`` equal to a prefix of ``b``.

    Capped at ``min(len(a), len(b))``; the full-overlap case means ``b``
    occurs at the end of ``a`` (or ``a`` at the start of ``b``).
    """
    limit = min(len(a), len(b))
    for length in range(limit, 0, -1):
        if a[-length:] == b[:length]:
            return length
    return 0

"""Parser for the WNDB 3.0 database file format.

Each part of speech contributes an index file (lemma -> synset offsets)
and a data file (one synset per line, identified by its byte offset).
License header lines begin with two spaces.  The grammar is:

  index line:  lemma pos synset_cnt p_cnt [ptr_symbol...]
               sense_cnt tagsense_cnt synset_offset [synset_offset...]
  data line:   synset_offset lex_filenum ss_type w_cnt word lex_id
               [word lex_id...] p_cnt [ptr...] [frames...] | gloss

where w_cnt is two hex digits, lex_id one hex digit, p_cnt three decimal
digits, and a ptr is `symbol synset_offset pos source/target` with
source/target as four hex digits.  Verb lines carry frame triples between
the pointers and the gloss separator.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable, Mapping

from ..errors import DanglingPointer, MalformedLine
from .db import POS_ORDER, Pos, Pointer, PosStats, Synset, WordNetDb

# Adjective words may carry a syntactic-position marker: "galore(ip)".
_ADJ_MARKER_RE = re.compile(r"\((a|p|ip)\)$")

_GLOSS_SEP = " | "


class IndexEntry:
    __slots__ = ("lemma", "pos", "offsets")

    def __init__(self, lemma: str, pos: Pos, offsets: tuple[int, ...]):
        self.lemma = lemma
        self.pos = pos
        self.offsets = offsets


def _normalize_word(word: str) -> str:
    return _ADJ_MARKER_RE.sub("", word).lower()


def parse_index_line(line: str, file: str = "<index>", line_no: int = 0) -> IndexEntry:
    fields = line.split()
    try:
        lemma = fields[0]
        pos = Pos.from_tag(fields[1])
        synset_cnt = int(fields[2])
        p_cnt = int(fields[3])
        rest = fields[4 + p_cnt:]
        int(rest[0])  # sense_cnt, redundant with synset_cnt in 3.0
        int(rest[1])  # tagsense_cnt
        offsets = tuple(int(off) for off in rest[2:])
    except (IndexError, ValueError) as exc:
        raise MalformedLine(file, line_no, str(exc)) from exc
    if synset_cnt < 1 or len(offsets) != synset_cnt:
        raise MalformedLine(
            file, line_no,
            f"expected {synset_cnt} synset offsets, found {len(offsets)}",
        )
    return IndexEntry(lemma, pos, offsets)


def parse_data_line(line: str, file: str = "<data>", line_no: int = 0) -> Synset:
    head, sep, gloss = line.partition(_GLOSS_SEP)
    if not sep:
        raise MalformedLine(file, line_no, "missing gloss separator")
    fields = head.split()
    try:
        offset = int(fields[0])
        int(fields[1])  # lex_filenum
        pos = Pos.from_tag(fields[2])
        w_cnt = int(fields[3], 16)
        if w_cnt < 1:
            raise ValueError("w_cnt must be >= 1")
        lemmas = tuple(_normalize_word(fields[4 + 2 * i]) for i in range(w_cnt))
        for i in range(w_cnt):  # lex_id sanity: one hex digit each
            int(fields[5 + 2 * i], 16)
        at = 4 + 2 * w_cnt
        p_cnt = int(fields[at])
        at += 1
        pointers = []
        for _ in range(p_cnt):
            symbol, target, target_tag, source_target = fields[at:at + 4]
            int(source_target, 16)
            pointers.append(Pointer(symbol, int(target), Pos.from_tag(target_tag)))
            at += 4
        _check_trailer(fields[at:], pos)
    except (IndexError, ValueError) as exc:
        raise MalformedLine(file, line_no, str(exc)) from exc
    return Synset(
        offset=offset,
        pos=pos,
        lemmas=lemmas,
        gloss=gloss.strip(),
        pointers=tuple(pointers),
    )


def _check_trailer(fields: list[str], pos: Pos) -> None:
    """Validate what sits between the pointers and the gloss separator."""
    if not fields:
        return
    if pos is not Pos.VERB:
        raise ValueError(f"{len(fields)} unexpected trailing fields")
    f_cnt = int(fields[0])
    if len(fields) != 1 + 3 * f_cnt:
        raise ValueError("frame count does not match frame fields")
    for i in range(f_cnt):
        plus, f_num, w_num = fields[1 + 3 * i:4 + 3 * i]
        if plus != "+":
            raise ValueError(f"expected '+' in frame list, found {plus!r}")
        int(f_num)
        int(w_num, 16)


def _content_lines(stream: Iterable[str]) -> Iterable[tuple[int, str]]:
    for line_no, line in enumerate(stream, start=1):
        if line.startswith("  ") or not line.strip():
            continue
        yield line_no, line.rstrip("\n")


def parse_wndb(
    index_streams: Mapping[Pos, Iterable[str]],
    data_streams: Mapping[Pos, Iterable[str]],
    file_names: Mapping[Pos, tuple[str, str]] | None = None,
) -> WordNetDb:
    """Parse per-pos index and data streams into a linked :class:`WordNetDb`.

    ``file_names`` optionally labels each pos's (index, data) source for
    error messages.  Raises :class:`MalformedLine` on grammar violations and
    :class:`DanglingPointer` when, after a full parse, any pointer or index
    entry references a synset that does not exist.
    """
    synsets: dict[tuple[Pos, int], Synset] = {}
    lemma_index: dict[tuple[str, Pos], tuple[int, ...]] = {}
    stats: dict[Pos, PosStats] = {}

    for pos in POS_ORDER:
        if pos not in data_streams:
            continue
        index_name, data_name = (file_names or {}).get(
            pos, (f"index.{pos.file_suffix}", f"data.{pos.file_suffix}")
        )

        synset_count = 0
        for line_no, line in _content_lines(data_streams[pos]):
            synset = parse_data_line(line, data_name, line_no)
            synsets[(synset.pos, synset.offset)] = synset
            synset_count += 1

        word_count = 0
        pair_count = 0
        for line_no, line in _content_lines(index_streams[pos]):
            entry = parse_index_line(line, index_name, line_no)
            if entry.pos is not pos:
                raise MalformedLine(index_name, line_no, "pos tag does not match file")
            lemma_index[(entry.lemma, entry.pos)] = entry.offsets
            word_count += 1
            pair_count += len(entry.offsets)

        stats[pos] = PosStats(words=word_count, synsets=synset_count, pairs=pair_count)

    for (lemma, pos), offsets in lemma_index.items():
        for offset in offsets:
            if (pos, offset) not in synsets:
                raise DanglingPointer(offset, pos.value)
    for synset in synsets.values():
        for ptr in synset.pointers:
            if (ptr.target_pos, ptr.target_offset) not in synsets:
                raise DanglingPointer(ptr.target_offset, ptr.target_pos.value)

    return WordNetDb(synsets=synsets, lemma_index=lemma_index, stats=stats)


def load_db(dict_dir: str | Path) -> WordNetDb:
    """Read the eight WNDB files from ``dict_dir`` and parse them."""
    root = Path(dict_dir)
    index_streams: dict[Pos, Iterable[str]] = {}
    data_streams: dict[Pos, Iterable[str]] = {}
    opened = []
    try:
        for pos in POS_ORDER:
            index_path = root / f"index.{pos.file_suffix}"
            data_path = root / f"data.{pos.file_suffix}"
            for path, streams in ((index_path, index_streams), (data_path, data_streams)):
                handle = open(path, encoding="latin-1")
                opened.append(handle)
                streams[pos] = handle
        return parse_wndb(index_streams, data_streams)
    finally:
        for handle in opened:
            handle.close()

"""WNDB grammar: index and data line parsing, linking, stats."""

from pathlib import Path

import pytest

from semrank.errors import DanglingPointer, MalformedLine
from semrank.wordnet import Pointer, Pos, load_db, parse_wndb
from semrank.wordnet.wndb import parse_data_line, parse_index_line

MINI_DICT = Path(__file__).parent / "data" / "mini_dict"


def test_index_line_single_offset():
    entry = parse_index_line("cat n 1 1 @ 1 0 00000001")
    assert entry.lemma == "cat"
    assert entry.pos is Pos.NOUN
    assert entry.offsets == (1,)


def test_index_line_multiple_pointer_symbols():
    entry = parse_index_line("felid n 1 2 @ ~ 1 0 00000002")
    assert entry.lemma == "felid"
    assert entry.offsets == (2,)


def test_index_line_multiple_offsets():
    entry = parse_index_line("bank n 2 1 @ 2 1 00000010 00000020")
    assert entry.offsets == (10, 20)


def test_index_line_offset_count_mismatch():
    with pytest.raises(MalformedLine):
        parse_index_line("bank n 2 1 @ 2 1 00000010", file="index.noun", line_no=7)


def test_index_line_truncated():
    with pytest.raises(MalformedLine) as info:
        parse_index_line("cat n 1", file="index.noun", line_no=3)
    assert info.value.file == "index.noun"
    assert info.value.line_no == 3


def test_data_line_two_words_two_pointers():
    synset = parse_data_line(
        "00000002 03 n 02 feline 0 felid 0 002 @ 00000003 n 0000 ~ 00000001 n 0000 | carnivorous mammal"
    )
    assert synset.offset == 2
    assert synset.pos is Pos.NOUN
    assert synset.lemmas == ("feline", "felid")
    assert synset.gloss == "carnivorous mammal"
    assert synset.pointers == (
        Pointer("@", 3, Pos.NOUN),
        Pointer("~", 1, Pos.NOUN),
    )


def test_data_line_trailing_spaces_tolerated():
    synset = parse_data_line(
        "00000001 03 n 01 cat 0 001 @ 00000002 n 0000 | a small feline  "
    )
    assert synset.gloss == "a small feline"


def test_data_line_words_lowercased():
    synset = parse_data_line("00000009 03 n 01 Leonberg 0 000 | a town")
    assert synset.lemmas == ("leonberg",)


def test_adjective_marker_stripped_and_satellite_mapped():
    synset = parse_data_line("00000002 00 s 01 quick(p) 0 001 & 00000001 a 0000 | speedy")
    assert synset.lemmas == ("quick",)
    assert synset.pos is Pos.ADJECTIVE
    for marker in ("(a)", "(ip)"):
        synset = parse_data_line(f"00000002 00 s 01 galore{marker} 0 000 | abundant")
        assert synset.lemmas == ("galore",)


def test_verb_frames_accepted():
    synset = parse_data_line(
        "00000001 29 v 01 run 0 001 @ 00000002 v 0000 01 + 02 00 | move fast"
    )
    assert synset.lemmas == ("run",)
    assert synset.pointers == (Pointer("@", 2, Pos.VERB),)


def test_verb_frames_count_mismatch():
    with pytest.raises(MalformedLine):
        parse_data_line("00000001 29 v 01 run 0 000 02 + 02 00 | gloss")


def test_trailer_rejected_for_nouns():
    with pytest.raises(MalformedLine):
        parse_data_line("00000001 03 n 01 cat 0 000 01 + 02 00 | gloss")


def test_missing_gloss_separator():
    with pytest.raises(MalformedLine) as info:
        parse_data_line("00000001 03 n 01 cat 0 000", file="data.noun", line_no=11)
    assert "gloss" in info.value.reason


def test_zero_word_count_rejected():
    with pytest.raises(MalformedLine):
        parse_data_line("00000001 03 n 00 000 | gloss")


def test_bad_lex_id_rejected():
    with pytest.raises(MalformedLine):
        parse_data_line("00000001 03 n 01 cat zz 000 | gloss")


def test_truncated_pointer_rejected():
    with pytest.raises(MalformedLine):
        parse_data_line("00000001 03 n 01 cat 0 001 @ 00000002 | gloss")


def test_bad_pointer_source_target_rejected():
    with pytest.raises(MalformedLine):
        parse_data_line("00000001 03 n 01 cat 0 001 @ 00000002 n zzzz | gloss")


def test_unknown_pos_tag_rejected():
    with pytest.raises(MalformedLine):
        parse_data_line("00000001 03 x 01 cat 0 000 | gloss")


def _streams(noun_index, noun_data):
    return (
        {Pos.NOUN: iter(noun_index)},
        {Pos.NOUN: iter(noun_data)},
    )


def test_parse_wndb_skips_headers_and_blank_lines():
    index, data = _streams(
        ["  1 header", "", "cat n 1 0 1 0 00000001"],
        ["  1 header", "   ", "00000001 03 n 01 cat 0 000 | a cat"],
    )
    db = parse_wndb(index, data)
    assert db.has_lemma("cat", Pos.NOUN)
    assert db.stats[Pos.NOUN].words == 1
    assert db.stats[Pos.NOUN].synsets == 1


def test_parse_wndb_pos_tag_file_mismatch():
    index, data = _streams(
        ["run v 1 0 1 0 00000001"],
        ["00000001 03 n 01 run 0 000 | gloss"],
    )
    with pytest.raises(MalformedLine) as info:
        parse_wndb(index, data)
    assert "does not match" in info.value.reason


def test_parse_wndb_dangling_index_offset():
    index, data = _streams(
        ["cat n 1 0 1 0 00000099"],
        ["00000001 03 n 01 cat 0 000 | gloss"],
    )
    with pytest.raises(DanglingPointer) as info:
        parse_wndb(index, data)
    assert info.value.offset == 99


def test_parse_wndb_dangling_pointer_target():
    index, data = _streams(
        ["cat n 1 0 1 0 00000001"],
        ["00000001 03 n 01 cat 0 001 @ 00000404 n 0000 | gloss"],
    )
    with pytest.raises(DanglingPointer) as info:
        parse_wndb(index, data)
    assert info.value.offset == 404


def test_parse_wndb_cross_pos_pointer_resolves():
    db = parse_wndb(
        {
            Pos.NOUN: iter(["runner n 1 0 1 0 00000001"]),
            Pos.VERB: iter(["run v 1 0 1 0 00000002"]),
        },
        {
            Pos.NOUN: iter(["00000001 03 n 01 runner 0 001 + 00000002 v 0000 | one who runs"]),
            Pos.VERB: iter(["00000002 29 v 01 run 0 001 + 00000001 n 0000 | move fast"]),
        },
    )
    assert db.totals().synsets == 2


def test_parse_wndb_empty_streams():
    db = parse_wndb({pos: iter([]) for pos in Pos}, {pos: iter([]) for pos in Pos})
    totals = db.totals()
    assert (totals.words, totals.synsets, totals.pairs) == (0, 0, 0)


def test_load_db_mini_fixture_stats(mini_db):
    assert mini_db.stats[Pos.NOUN].words == 4
    assert mini_db.stats[Pos.NOUN].synsets == 3
    assert mini_db.stats[Pos.NOUN].pairs == 4
    assert mini_db.stats[Pos.VERB].words == 2
    assert mini_db.stats[Pos.ADJECTIVE].synsets == 2
    assert mini_db.stats[Pos.ADVERB].words == 0
    totals = mini_db.totals()
    assert totals.words == 8
    assert totals.synsets == 7
    assert totals.pairs == 8


def test_load_db_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_db(tmp_path)


def test_load_db_matches_manual_parse(mini_db):
    again = load_db(MINI_DICT)
    assert again.lemma_index == mini_db.lemma_index
    assert again.stats == mini_db.stats

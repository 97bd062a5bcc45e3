"""Extractor: pattern matching, language attribution, page loading.

Unit tests drive the matcher with small inline pages; integration
tests freeze the metadata extracted from the committed fixture pages,
which mirror the two real repository layouts (meta-tag style and
label/value-table style).
"""

import json

import pytest

from scicorpus.extractor import (
    ConfigError,
    ExtractionError,
    RawPage,
    extract_record,
    load_config,
    load_config_file,
    read_pages,
)
from scicorpus.langid import default_model

BASE_CONFIG = {
    "abstracts_regex": "$^",
    "titles_regex": "$^",
    "keywords_regex": "$^",
    "authors_regex": "$^",
    "publishers_regex": "$^",
    "date_available_regex": "$^",
    "journal_regex": "$^",
    "bibliographic_citation_regex": "$^",
    "document_language_regex": "$^",
    "link_html_regex": "$^",
    "link_pdf_regex": "$^",
    "document_type_regex": "$^",
    "license_regex": "$^",
    "URI_regex": "$^",
    "abstracts_min_len": 0,
    "titles_min_len": 0,
    "targeted_langs": ["en", "es", "pt", "fr"],
}


def make_config(**overrides):
    merged = {**BASE_CONFIG, **overrides}
    return load_config(json.dumps(merged).encode("utf-8"))


def page(html, repository="repo", html_id=1):
    return RawPage(repository=repository, html_id=html_id, body=html.encode("utf-8"))


class TestAttributeMatch:
    def test_meta_content_attribute(self):
        cfg = make_config(titles_regex=".*citation_title.*")
        record = extract_record(
            page(
                '<html lang="en"><head>'
                '<meta name="citation_title" content="Solar output forecasting" />'
                "</head></html>"
            ),
            cfg,
        )
        assert record.titles == {"en": "Solar output forecasting"}

    def test_href_when_content_missing(self):
        cfg = make_config(link_pdf_regex=".*citation_pdf_url.*")
        record = extract_record(
            page('<html><a name="citation_pdf_url" href="http://x/y.pdf">pdf</a></html>'),
            cfg,
        )
        assert record.link_pdf == "http://x/y.pdf"

    def test_element_text_as_last_resort(self):
        cfg = make_config(document_type_regex=".*doc-type.*")
        record = extract_record(
            page('<html><p class="doc-type">article</p></html>'), cfg
        )
        assert record.document_type == "article"

    def test_any_attribute_can_match(self):
        cfg = make_config(journal_regex=".*journal-name.*")
        record = extract_record(
            page('<html><span id="journal-name">Energy Letters</span></html>'), cfg
        )
        assert record.journal == "Energy Letters"

    def test_patterns_are_case_insensitive(self):
        cfg = make_config(titles_regex=".*CITATION_TITLE.*")
        record = extract_record(
            page(
                '<html lang="en"><meta name="citation_title" content="Grid storage" />'
                "</html>"
            ),
            cfg,
        )
        assert record.titles == {"en": "Grid storage"}


class TestLabelMatch:
    def test_value_comes_from_next_sibling(self):
        cfg = make_config(authors_regex="^Author:$")
        record = extract_record(
            page(
                "<html><table><tr>"
                "<td>Author:</td><td>Silva, Ana</td>"
                "</tr></table></html>"
            ),
            cfg,
        )
        assert record.authors == ["Silva, Ana"]

    def test_language_read_from_value_cell_not_label(self):
        # The label cell inherits the page language; the value cell
        # carries its own lang attribute, which must win.
        cfg = make_config(abstracts_regex="^Abstract:$")
        record = extract_record(
            page(
                '<html lang="pt"><table><tr>'
                "<td>Abstract:</td>"
                '<td lang="en">An English abstract about measurements.</td>'
                "</tr></table></html>"
            ),
            cfg,
        )
        assert record.abstracts == {"en": "An English abstract about measurements."}

    def test_definition_list_layout(self):
        cfg = make_config(date_available_regex="^Publication date$")
        record = extract_record(
            page("<html><dl><dt>Publication date</dt><dd>2019-04-15</dd></dl></html>"),
            cfg,
        )
        assert record.date_available == "2019-04-15"

    def test_long_text_is_not_a_label(self):
        cfg = make_config(keywords_regex=".*Keywords.*")
        filler = "Keywords appear in this very long sentence " + "x" * 60
        record = extract_record(page(f"<html><td>{filler}</td><td>a; b</td></html>"), cfg)
        assert record.keywords == []

    def test_only_label_like_tags_match_by_text(self):
        cfg = make_config(authors_regex="^Author:$")
        record = extract_record(
            page("<html><p>Author:</p><p>Silva, Ana</p></html>"), cfg
        )
        assert record.authors == []

    def test_label_without_sibling_yields_nothing(self):
        cfg = make_config(authors_regex="^Author:$")
        record = extract_record(page("<html><table><tr><td>Author:</td></tr></table></html>"), cfg)
        assert record.authors == []


class TestTextSelection:
    def test_longest_candidate_wins_per_language(self):
        cfg = make_config(titles_regex=".*citation_title.*")
        record = extract_record(
            page(
                '<html lang="en">'
                '<meta name="citation_title" content="Short title" />'
                '<meta name="citation_title" content="A noticeably longer title" />'
                "</html>"
            ),
            cfg,
        )
        assert record.titles == {"en": "A noticeably longer title"}

    def test_minimum_length_drops_short_values(self):
        cfg = make_config(titles_regex=".*citation_title.*", titles_min_len=20)
        record = extract_record(
            page('<html lang="en"><meta name="citation_title" content="Too short" /></html>'),
            cfg,
        )
        assert record.titles == {}

    def test_untargeted_language_dropped(self):
        cfg = make_config(abstracts_regex="^Abstract:$", targeted_langs=["en"])
        record = extract_record(
            page(
                '<html><table><tr><td>Abstract:</td>'
                '<td lang="de">Ein Text auf Deutsch ohne Belang.</td></tr></table></html>'
            ),
            cfg,
        )
        assert record.abstracts == {}

    def test_langid_fallback_when_no_lang_attribute(self):
        cfg = make_config(abstracts_regex="^Abstract:$")
        record = extract_record(
            page(
                "<html><table><tr><td>Abstract:</td>"
                "<td>Los resultados muestran una mejora clara en todos los casos "
                "estudiados durante el ensayo.</td></tr></table></html>"
            ),
            cfg,
            default_model(),
        )
        assert list(record.abstracts) == ["es"]

    def test_unidentifiable_text_dropped_without_lang(self):
        cfg = make_config(titles_regex=".*citation_title.*")
        record = extract_record(
            page('<html><meta name="citation_title" content="1234 5678" /></html>'),
            cfg,
            default_model(),
        )
        assert record.titles == {}

    def test_internal_whitespace_collapsed(self):
        cfg = make_config(titles_regex=".*citation_title.*")
        record = extract_record(
            page(
                '<html lang="en">'
                '<meta name="citation_title" content="  Wind   turbine\n　icing  " />'
                "</html>"
            ),
            cfg,
        )
        assert record.titles == {"en": "Wind turbine icing"}


class TestScalarAndListFields:
    def test_keywords_split_on_semicolon_and_deduplicated(self):
        cfg = make_config(keywords_regex="^Keywords:$")
        record = extract_record(
            page(
                "<html><table><tr><td>Keywords:</td>"
                "<td>solar; wind ; solar;; storage</td></tr></table></html>"
            ),
            cfg,
        )
        assert record.keywords == ["solar", "wind", "storage"]

    def test_authors_not_split(self):
        cfg = make_config(authors_regex=".*citation_author.*")
        record = extract_record(
            page(
                '<html><meta name="citation_author" content="Silva, Ana; Costa, Rui" />'
                '<meta name="citation_author" content="Moreau, Anne" /></html>'
            ),
            cfg,
        )
        assert record.authors == ["Silva, Ana; Costa, Rui", "Moreau, Anne"]

    def test_document_language_normalized(self):
        cfg = make_config(document_language_regex="^Language:$")
        record = extract_record(
            page("<html><table><tr><td>Language:</td><td>EN-GB</td></tr></table></html>"),
            cfg,
        )
        assert record.document_language == "en"

    def test_license_link_from_value_subtree(self):
        cfg = make_config(license_regex="^Access:$")
        record = extract_record(
            page(
                "<html><table><tr><td>Access:</td>"
                '<td><a href="http://creativecommons.org/licenses/by/4.0/">openAccess</a>'
                "</td></tr></table></html>"
            ),
            cfg,
        )
        assert record.license == "openAccess"
        assert record.license_link == "http://creativecommons.org/licenses/by/4.0/"

    def test_license_link_from_following_sibling(self):
        cfg = make_config(license_regex=".*access-type.*")
        record = extract_record(
            page(
                '<html><span class="access-type">open access</span>'
                '<span><a href="https://example.org/license">terms</a></span></html>'
            ),
            cfg,
        )
        assert record.license == "open access"
        assert record.license_link == "https://example.org/license"

    def test_license_without_link_leaves_it_empty(self):
        cfg = make_config(license_regex="^Access:$")
        record = extract_record(
            page("<html><table><tr><td>Access:</td><td>restrictedAccess</td></tr></table></html>"),
            cfg,
        )
        assert record.license == "restrictedAccess"
        assert record.license_link == ""


class TestPageDecoding:
    def test_empty_body_rejected(self):
        with pytest.raises(ExtractionError, match="empty"):
            RawPage(repository="repo", html_id=1, body=b"")

    def test_binary_junk_rejected(self):
        junk = RawPage(repository="repo", html_id=2, body=b"\xff\xfe\xfd" * 100)
        with pytest.raises(ExtractionError, match="not decodable"):
            extract_record(junk, make_config())

    def test_mostly_valid_text_survives_bad_bytes(self):
        cfg = make_config(document_type_regex=".*doc-type.*")
        body = '<html><p class="doc-type">caf\xe9 article</p></html>'.encode("latin-1")
        record = extract_record(RawPage("repo", 3, body), cfg)
        assert "article" in record.document_type


class TestConfigValidation:
    def test_round_trips_from_file(self, configs_dir):
        cfg = load_config_file(configs_dir / "bibliotecadigital-ipb-pt.json")
        assert cfg.targeted_langs == ("en", "es", "pt", "fr")
        assert cfg.abstracts_min_len == 20

    @pytest.mark.parametrize("missing", sorted(set(BASE_CONFIG) - {"targeted_langs"}))
    def test_missing_field_is_named(self, missing):
        broken = {k: v for k, v in BASE_CONFIG.items() if k != missing}
        with pytest.raises(ConfigError, match=missing):
            load_config(json.dumps(broken).encode("utf-8"))

    def test_bad_pattern_reported(self):
        with pytest.raises(ConfigError, match="titles_regex"):
            make_config(titles_regex="(unclosed")

    def test_pattern_must_be_string(self):
        with pytest.raises(ConfigError, match="titles_regex"):
            make_config(titles_regex=123)

    def test_min_len_must_be_integer(self):
        with pytest.raises(ConfigError, match="abstracts_min_len"):
            make_config(abstracts_min_len="20")
        with pytest.raises(ConfigError, match="abstracts_min_len"):
            make_config(abstracts_min_len=True)

    def test_negative_min_len_rejected(self):
        with pytest.raises(ConfigError):
            make_config(titles_min_len=-1)

    def test_targeted_langs_must_be_string_list(self):
        with pytest.raises(ConfigError, match="targeted_langs"):
            make_config(targeted_langs="en")
        with pytest.raises(ConfigError, match="targeted_langs"):
            make_config(targeted_langs=[1, 2])

    def test_duplicate_targeted_langs_rejected(self):
        # "en" and "EN" normalize to the same code.
        with pytest.raises(ConfigError, match="duplicate"):
            make_config(targeted_langs=["en", "EN"])

    def test_invalid_json_rejected(self):
        with pytest.raises(ConfigError, match="not valid UTF-8 JSON"):
            load_config(b"{not json")
        with pytest.raises(ConfigError, match="top level"):
            load_config(b'["list"]')


class TestReadPages:
    def test_sorted_by_repository_then_id(self, tmp_path):
        for repo, ids in (("zeta", [3, 1]), ("alpha", [2])):
            for page_id in ids:
                target = tmp_path / repo / f"{page_id}.html"
                target.parent.mkdir(exist_ok=True)
                target.write_bytes(b"<html></html>")
        loaded = read_pages(tmp_path)
        assert [(p.repository, p.html_id) for p in loaded] == [
            ("alpha", 2),
            ("zeta", 1),
            ("zeta", 3),
        ]

    def test_non_numeric_stem_rejected(self, tmp_path):
        target = tmp_path / "repo" / "latest.html"
        target.parent.mkdir()
        target.write_bytes(b"<html></html>")
        with pytest.raises(ExtractionError, match="numeric id"):
            read_pages(tmp_path)

    def test_empty_directory_gives_no_pages(self, tmp_path):
        assert read_pages(tmp_path) == []


@pytest.fixture(scope="module")
def corpus(pages_dir, configs_dir):
    pages = read_pages(pages_dir)
    configs = {
        "bibliotecadigital-ipb-pt": load_config_file(
            configs_dir / "bibliotecadigital-ipb-pt.json"
        ),
        "dial-uclouvain-be": load_config_file(configs_dir / "dial-uclouvain-be.json"),
    }
    model = default_model()
    return {
        (p.repository, p.html_id): extract_record(p, configs[p.repository], model)
        for p in pages
    }


class TestFixtureCorpus:
    def test_every_fixture_page_yields_a_record(self, corpus):
        assert len(corpus) == 27

    def test_table_layout_record_is_fully_extracted(self, corpus):
        record = corpus[("bibliotecadigital-ipb-pt", 14638)]
        assert record.titles == {
            "en": "The development ways of renewable energy: the economic and "
            "financial performance of firms in this sector in Armenia and "
            "OECD countries"
        }
        assert set(record.abstracts) == {"en", "pt"}
        assert record.abstracts["en"].startswith(
            "In this research is intended to analyse the expansion"
        )
        assert record.abstracts["en"].endswith("in the analysed sector.")
        assert record.abstracts["pt"].startswith(
            "Esta investigação pretende analisar a expansão"
        )
        assert record.keywords == [
            "Renewable energy (RE)",
            "Financial data",
            "Financial ratios",
            "Market price",
            "Environment",
            "Domínio/Área Científica::Ciências Sociais::Economia e Gestão",
        ]
        assert record.authors == ["Tarakhchyan, Siranush"]
        assert record.link_html == "https://bibliotecadigital.ipb.pt/handle/10198/14638"
        assert record.link_pdf == (
            "https://bibliotecadigital.ipb.pt/bitstream/10198/14638/1/"
            "Tarakhchyan_Siranush.pdf"
        )
        assert record.uri == "http://hdl.handle.net/10198/14638"
        assert record.license == "openAccess"
        assert record.license_link == "http://creativecommons.org/licenses/by-nc/4.0/"
        assert record.date_available == "2017-11-20T15:08:42Z"
        assert record.document_language == "en"
        assert record.document_type == "masterThesis"
        assert record.bibliographic_citation == ""
        assert record.journal == ""

    def test_meta_layout_record_is_fully_extracted(self, corpus):
        record = corpus[("dial-uclouvain-be", 201)]
        assert record.titles == {
            "en": "Digital tomosynthesis in population breast cancer screening",
            "es": "Tomosíntesis digital en el cribado poblacional del cáncer de mama",
        }
        assert record.abstracts["en"].startswith("Breast cancer screening")
        assert record.authors == ["García, Lucía", "Moreau, Anne"]
        assert record.publishers == ["Presses universitaires de Louvain"]
        assert record.keywords == ["Screening", "Tomosynthesis", "Mammography"]
        assert record.journal == "Revue médicale de Louvain"
        assert record.bibliographic_citation == (
            "García, L.; Moreau, A. Revue médicale de Louvain 74 (2019) 112-120."
        )
        assert record.link_pdf == "https://dial.uclouvain.be/downloader/201.pdf"
        assert record.link_html == "http://hdl.handle.net/2078.1/201"
        assert record.uri == "http://hdl.handle.net/2078.1/201"
        assert record.license == "open access"
        assert record.license_link == "https://creativecommons.org/licenses/by/4.0/"
        assert record.document_type == "article"
        assert record.document_language == "en"
        assert record.date_available == "2019-04-15"

    def test_fallback_language_attribution(self, corpus):
        # Page 203 carries no lang attributes at all; the identifier
        # must attribute the English and Spanish texts correctly.
        record = corpus[("dial-uclouvain-be", 203)]
        assert set(record.titles) == {"en", "es"}
        assert set(record.abstracts) == {"en", "es"}

    def test_restricted_access_record_has_no_license_link(self, corpus):
        record = corpus[("bibliotecadigital-ipb-pt", 15500)]
        assert record.license == "restrictedAccess"
        assert record.license_link == ""

    def test_page_without_text_warns_but_still_returns(
        self, pages_dir, configs_dir, caplog
    ):
        pages = read_pages(pages_dir)
        target = next(p for p in pages if p.html_id == 15500)
        cfg = load_config_file(configs_dir / "bibliotecadigital-ipb-pt.json")
        with caplog.at_level("WARNING", logger="scicorpus.extractor"):
            record = extract_record(target, cfg)
        assert record.titles == {} and record.abstracts == {}
        assert any("no title or abstract" in m for m in caplog.messages)

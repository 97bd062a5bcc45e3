#!/usr/bin/env python3
"""Generate the HTML page fixtures used by the pipeline test suite.

Two synthetic repositories are rendered in different markups:

* ``bibliotecadigital-ipb-pt`` - DSpace-style label/value metadata
  tables with Google Scholar meta tags for the file links;
* ``dial-uclouvain-be`` - meta-tag heavy head plus ``dl`` detail rows
  and ``publication-metadata`` abstract divs.

The corpus is designed to exercise every pipeline path: parallel
records in three language pairs and four focused domains, monolingual
records, records that trigger each filter rule, a duplicated funding
sentence, a record with no usable text, and a record whose keyword
counts hit two domains at once.

After writing ``tests/fixtures/pages`` and ``tests/fixtures/configs``
the script runs the full pipeline in a scratch directory and asserts
the properties the tests depend on (extraction fidelity, domain
assignments, mined-pair eligibility, per-rule rejections, benchmark
construction, run-to-run determinism). Rerun it after changing the
extractor, miner, or filters, and commit the regenerated fixtures.
"""

from __future__ import annotations

import html
import json
import shutil
import sys
import tempfile
from dataclasses import dataclass, field, replace
from pathlib import Path

from scicorpus.benchmark import BenchmarkSpec
from scicorpus.filters import normalize_whitespace
from scicorpus.pipeline import PipelineConfig, run_all
from scicorpus.records import parse_record

IPB = "bibliotecadigital-ipb-pt"
DIAL = "dial-uclouvain-be"

MIN_LEN = 20  # titles_min_len and abstracts_min_len in both configs

CONFIGS = {
    IPB: {
        "abstracts_regex": "^Abstract:$|^Resumo:$",
        "abstracts_min_len": MIN_LEN,
        "titles_regex": "^Title:$|^Título:$",
        "titles_min_len": MIN_LEN,
        "keywords_regex": "^Keywords:$|^Palavras-chave:$",
        "authors_regex": "^Author:$|^Autor:$",
        "publishers_regex": "^Publisher:$|^Editora:$",
        "date_available_regex": "^Available:$|^Issue date:$",
        "journal_regex": "^Journal:$|^Revista:$",
        "bibliographic_citation_regex": "^Citation:$|^Citação:$",
        "document_language_regex": "^Language:$|^Idioma:$",
        "link_html_regex": "citation_abstract_html_url",
        "link_pdf_regex": "citation_pdf_url",
        "document_type_regex": "^Type:$|^Tipo:$",
        "license_regex": "^Access:$|^Acesso:$",
        "URI_regex": "^URI:$",
        "targeted_langs": ["en", "es", "pt", "fr"],
    },
    DIAL: {
        "abstracts_regex": ".*publication-metadata.*",
        "abstracts_min_len": MIN_LEN,
        "titles_regex": ".*citation_title.*",
        "titles_min_len": MIN_LEN,
        "keywords_regex": ".*Keywords.*",
        "authors_regex": ".*citation_author.*",
        "publishers_regex": ".*Affiliation.*|.*Publisher.*",
        "date_available_regex": ".*Publication date.*|.*Defense date.*",
        "journal_regex": ".*citation_journal_title.*|.*citation_dissertation_institution.*",
        "bibliographic_citation_regex": ".*Bibliographic reference.*",
        "document_language_regex": ".*Language.*",
        "link_html_regex": ".*Permanent URL.*",
        "link_pdf_regex": ".*citation_pdf_url.*",
        "document_type_regex": ".*Document type.*",
        "license_regex": ".*Access type.*",
        "URI_regex": ".*Permanent URL.*",
        "targeted_langs": ["en", "es", "pt", "fr"],
    },
}

CC_BY_NC = "http://creativecommons.org/licenses/by-nc/4.0/"
CC_BY = "https://creativecommons.org/licenses/by/4.0/"

# Shared funding acknowledgement planted in two records so the second
# occurrence of the mined pair is rejected as a duplicate.
FUNDING_EN = (
    "This work was supported by national funds through the POCI-2016 "
    "energy research programme."
)
FUNDING_PT = (
    "Este trabalho foi financiado por fundos nacionais através do "
    "programa de investigação em energia POCI-2016."
)


@dataclass
class PageSpec:
    repo: str
    html_id: int
    titles: dict[str, str] = field(default_factory=dict)
    abstracts: dict[str, list[str]] = field(default_factory=dict)
    keywords: list[str] = field(default_factory=list)
    authors: list[str] = field(default_factory=list)
    publishers: list[str] = field(default_factory=list)
    date: str = ""
    language: str = ""
    doc_type: str = ""
    license_text: str = ""
    license_href: str = ""
    journal: str = ""
    citation: str = ""
    pdf_name: str = ""
    lang_attrs: bool = True
    expect_domain: str = "general"
    expect_counts: dict[str, int] | None = None
    expect_rejected_by: str | None = None
    expect_eligible: bool = False
    expect_mono_langs: tuple[str, ...] = ()
    expect_no_text: bool = False

    @property
    def handle(self) -> str:
        prefix = "10198" if self.repo == IPB else "2078.1"
        return f"{prefix}/{self.html_id}"

    @property
    def link_pdf(self) -> str:
        if self.repo == IPB:
            name = self.pdf_name or f"documento_{self.html_id}.pdf"
            return f"https://bibliotecadigital.ipb.pt/bitstream/{self.handle}/1/{name}"
        return f"https://dial.uclouvain.be/downloader/{self.html_id}.pdf"

    @property
    def link_html(self) -> str:
        if self.repo == IPB:
            return f"https://bibliotecadigital.ipb.pt/handle/{self.handle}"
        return f"https://hdl.handle.net/{self.handle}"

    @property
    def uri(self) -> str:
        return f"http://hdl.handle.net/{self.handle}"


def _too_long_words(prefix: str, stem: str) -> str:
    # 2 prefix words + 249 generated words = 251, over the 250 limit.
    return prefix + " " + " ".join(f"{stem}{i:03d}" for i in range(249))


PAGES = [
    # ------------------------------------------------------------------
    # The worked-example record: energy domain with keyword count 6.
    PageSpec(
        repo=IPB,
        html_id=14638,
        titles={
            "en": "The development ways of renewable energy: the economic and "
            "financial performance of firms in this sector in Armenia and "
            "OECD countries",
        },
        abstracts={
            "en": [
                "In this research is intended to analyse the expansion of the "
                "economic sector related to the development ways of renewable "
                "energy and the economic and financial performance of "
                "companies operating in this field.",
                "The study covers 42 firms from Armenia and OECD countries "
                "between 2010 and 2016.",
                "Financial ratios of the companies were compared with the "
                "market price indicators reported for each country.",
                "The results indicate that investment in renewable energy "
                "correlates with stronger financial performance in the "
                "analysed sector.",
            ],
            "pt": [
                "Esta investigação pretende analisar a expansão do setor "
                "económico relacionado com o desenvolvimento das energias "
                "renováveis e os desempenhos económico e financeiro das "
                "empresas que operam nesse setor.",
                "O estudo abrange 42 empresas da Arménia e de países da OCDE "
                "entre 2010 e 2016.",
                "Os rácios financeiros das empresas foram comparados com os "
                "indicadores de preço de mercado reportados para cada país.",
                "Os resultados indicam que o investimento em energias "
                "renováveis está associado a um desempenho financeiro mais "
                "forte no setor analisado.",
            ],
        },
        keywords=[
            "Renewable energy (RE)",
            "Financial data",
            "Financial ratios",
            "Market price",
            "Environment",
            "Domínio/Área Científica::Ciências Sociais::Economia e Gestão",
        ],
        authors=["Tarakhchyan, Siranush"],
        date="2017-11-20T15:08:42Z",
        language="en",
        doc_type="masterThesis",
        license_text="openAccess",
        license_href=CC_BY_NC,
        pdf_name="Tarakhchyan_Siranush.pdf",
        expect_domain="energy",
        expect_counts={"cancer": 0, "energy": 6, "transportation": 0, "neuroscience": 0},
    ),
    # ------------------------------------------------------------------
    # Energy records with per-sentence anchors (numbers, places, units)
    # so the mined pairs clear the benchmark score gate.
    PageSpec(
        repo=IPB,
        html_id=15001,
        titles={
            "en": "Photovoltaic microgeneration on public buildings in Bragança",
            "pt": "Microgeração fotovoltaica em edifícios públicos de Bragança",
        },
        abstracts={
            "en": [
                "Photovoltaic panels covering 1840 square metres were "
                "installed on fourteen municipal buildings in Bragança.",
                "Annual solar energy production reached 4.2 GWh, about 31% of "
                "municipal electricity demand.",
                "Inverter faults reduced output by 57 MWh during the winter "
                "of 2016.",
                "Payback time for the photovoltaic investment was estimated "
                "at 7.4 years.",
            ],
            "pt": [
                "Painéis fotovoltaicos cobrindo 1840 metros quadrados foram "
                "instalados em catorze edifícios municipais de Bragança.",
                "A produção anual de energia solar atingiu 4.2 GWh, cerca de "
                "31% do consumo municipal de eletricidade.",
                "Avarias nos inversores reduziram a produção em 57 MWh "
                "durante o inverno de 2016.",
                "O tempo de retorno do investimento fotovoltaico foi estimado "
                "em 7.4 anos.",
            ],
        },
        keywords=["Solar energy", "Microgeneration", "Public buildings"],
        authors=["Castro, Helena", "Vaz, Ricardo"],
        date="2019-03-02T10:12:00Z",
        language="pt",
        doc_type="article",
        license_text="openAccess",
        license_href=CC_BY_NC,
        journal="Revista de Energias do Nordeste",
        citation="Castro, H.; Vaz, R. Revista de Energias do Nordeste 7 (2019) 44-58.",
        expect_domain="energy",
        expect_eligible=True,
    ),
    PageSpec(
        repo=IPB,
        html_id=15002,
        titles={
            "en": "Wind power integration in the Alto Minho distribution grid",
            "pt": "Integração da energia eólica na rede de distribuição do Alto Minho",
        },
        abstracts={
            "en": [
                "Wind farms in the Alto Minho uplands delivered 9350 MWh to "
                "the grid during 2017.",
                "Turbine blade erosion lowered the capacity factor from 0.34 "
                "to 0.29 at the Picos site.",
                "Noise complaints fell after the 2250 kW generators received "
                "serrated trailing edges.",
                "SCADA alarms logged 4580 icing events and curtailed 12.3 GWh "
                "at Serra de Arga in 2016.",
            ],
            "pt": [
                "Os parques eólicos nas terras altas do Alto Minho forneceram "
                "9350 MWh à rede durante 2017.",
                "A erosão das pás das turbinas baixou o fator de capacidade "
                "de 0.34 para 0.29 no local dos Picos.",
                "As queixas de ruído diminuíram depois de os geradores de "
                "2250 kW receberem bordos de fuga serrilhados.",
                "Os alarmes SCADA registaram 4580 eventos de gelo e cortaram "
                "12.3 GWh na Serra de Arga em 2016.",
            ],
        },
        keywords=["Wind energy", "Distribution grid", "Capacity factor"],
        authors=["Lopes, Marta"],
        date="2018-06-14T09:00:00Z",
        language="pt",
        doc_type="masterThesis",
        license_text="openAccess",
        license_href=CC_BY_NC,
        expect_domain="energy",
        expect_eligible=True,
    ),
    PageSpec(
        repo=IPB,
        html_id=15003,
        titles={
            "en": "Biomass district heating for rural Trás-os-Montes municipalities",
            "pt": "Aquecimento urbano a biomassa para municípios de Trás-os-Montes",
        },
        abstracts={
            "en": [
                "Biomass boilers at the Mirandela district heating plant "
                "consumed 88000 tonnes of forest residue.",
                "Emission sensors OPSIS AR650 recorded 96.4 mg/Nm3 at stack "
                "E2 during March 2014.",
                "Biofuel pellets replaced 2300 tonnes of imported diesel "
                "in 2018.",
                FUNDING_EN,
            ],
            "pt": [
                "As caldeiras de biomassa da central de aquecimento urbano de "
                "Mirandela consumiram 88000 toneladas de resíduos florestais.",
                "Os sensores de emissões OPSIS AR650 registaram 96.4 mg/Nm3 "
                "na chaminé E2 durante março de 2014.",
                "Pellets de biocombustível substituíram 2300 toneladas de "
                "gasóleo importado em 2018.",
                FUNDING_PT,
            ],
        },
        keywords=["Biomass", "District heating", "Biofuel"],
        authors=["Esteves, João", "Baptista, Carla"],
        date="2019-11-30T16:45:12Z",
        language="pt",
        doc_type="article",
        license_text="openAccess",
        license_href=CC_BY_NC,
        journal="Revista de Energias do Nordeste",
        expect_domain="energy",
        expect_eligible=True,
    ),
    PageSpec(
        repo=IPB,
        html_id=15004,
        titles={
            "en": "Small hydropower optimisation in the Douro basin",
            "pt": "Otimização de pequenas centrais hidroelétricas na bacia do Douro",
        },
        abstracts={
            "en": [
                "Run-of-river hydropower stations on the Douro tributaries "
                "generated 141 GWh in 2019.",
                "Sediment flushing gates restored 87% of the original turbine "
                "intake flow.",
                "Fish ladders at Foz Tua passed 5400 migrating lampreys "
                "during spring.",
                FUNDING_EN,
            ],
            "pt": [
                "As centrais hidroelétricas a fio de água nos afluentes do "
                "Douro geraram 141 GWh em 2019.",
                "As comportas de descarga de sedimentos restauraram 87% do "
                "caudal original de admissão às turbinas.",
                "As escadas de peixes em Foz Tua permitiram a passagem de "
                "5400 lampreias migratórias durante a primavera.",
                FUNDING_PT,
            ],
        },
        keywords=["Hydropower", "Douro", "Fish passage"],
        authors=["Teixeira, Rui"],
        date="2020-02-17T11:30:00Z",
        language="pt",
        doc_type="doctoralThesis",
        license_text="openAccess",
        license_href=CC_BY_NC,
        expect_domain="energy",
        expect_eligible=True,
        expect_rejected_by="duplicate",
    ),
    PageSpec(
        repo=IPB,
        html_id=15005,
        titles={
            "en": "Geothermal greenhouse heating systems near Chaves",
            "pt": "Sistemas geotérmicos de aquecimento de estufas perto de Chaves",
        },
        abstracts={
            "en": [
                "Geothermal heat pumps supplied 12.6 GWh of heating to "
                "greenhouses near Chaves.",
                "Borehole temperatures at 1500 metres depth averaged 76 "
                "degrees Celsius.",
                "Energy storage in phase-change materials cut auxiliary "
                "boiler use by 44%.",
                "Levelised heating cost fell to 38 euros per MWh across the "
                "2020 season.",
            ],
            "pt": [
                "Bombas de calor geotérmico forneceram 12.6 GWh de "
                "aquecimento a estufas perto de Chaves.",
                "As temperaturas dos furos a 1500 metros de profundidade "
                "registaram em média 76 graus Celsius.",
                "O armazenamento de energia em materiais de mudança de fase "
                "reduziu o uso de caldeiras auxiliares em 44%.",
                "O custo nivelado de aquecimento caiu para 38 euros por MWh "
                "na época de 2020.",
            ],
        },
        keywords=["Geothermal", "Greenhouses", "Heat pumps"],
        authors=["Fonseca, Ana", "Melo, Duarte"],
        date="2021-05-05T08:20:00Z",
        language="pt",
        doc_type="article",
        license_text="restrictedAccess",
        expect_domain="energy",
        expect_eligible=True,
    ),
    # ------------------------------------------------------------------
    # Transportation, general-parallel and monolingual records.
    PageSpec(
        repo=IPB,
        html_id=15100,
        titles={
            "en": "Urban mobility and fare integration in metropolitan Porto",
            "pt": "Mobilidade urbana e integração tarifária no Porto metropolitano",
        },
        abstracts={
            "en": [
                "Urban mobility surveys in Porto recorded 184000 weekday "
                "trips on the light rail network.",
                "Bus corridor reallocation cut average delay by 3.8 minutes "
                "per trip.",
                "Public transport fare integration raised ridership 9% among "
                "students.",
            ],
            "pt": [
                "Inquéritos de mobilidade urbana no Porto registaram 184000 "
                "viagens diárias na rede de metro ligeiro.",
                "A reafetação de corredores de autocarro reduziu o atraso "
                "médio em 3.8 minutos por viagem.",
                "A integração tarifária do transporte público aumentou a "
                "procura em 9% entre estudantes.",
            ],
        },
        keywords=["Urban mobility", "Fare integration", "Light rail"],
        authors=["Neves, Inês"],
        date="2020-09-21T14:05:00Z",
        language="pt",
        doc_type="article",
        license_text="openAccess",
        license_href=CC_BY,
        journal="Cadernos de Mobilidade",
        expect_domain="transportation",
    ),
    PageSpec(
        repo=IPB,
        html_id=15101,
        titles={
            "en": "Railway freight electrification in the Beira Alta corridor",
            "pt": "Eletrificação do transporte ferroviário de mercadorias no corredor da Beira Alta",
        },
        abstracts={
            "en": [
                "Railway freight between Leixões and Salamanca moved 2.1 "
                "million tonnes in 2015.",
                "Axle load limits of 22.5 tonnes constrain intermodal "
                "container flows.",
                "Electrifying the 96 km Beira Alta section would cut "
                "logistics costs by 14%.",
            ],
            "pt": [
                "O transporte ferroviário de mercadorias entre Leixões e "
                "Salamanca movimentou 2.1 milhões de toneladas em 2015.",
                "Limites de carga por eixo de 22.5 toneladas condicionam os "
                "fluxos intermodais de contentores.",
                "Eletrificar os 96 km do troço da Beira Alta reduziria os "
                "custos de logística em 14%.",
            ],
        },
        keywords=["Railway", "Freight", "Electrification"],
        authors=["Domingues, Pedro", "Sá, Luísa"],
        date="2016-12-01T10:00:00Z",
        language="pt",
        doc_type="masterThesis",
        license_text="openAccess",
        license_href=CC_BY_NC,
        expect_domain="transportation",
    ),
    PageSpec(
        repo=IPB,
        html_id=15200,
        titles={
            "en": "Household survey weighting under nonresponse in rural parishes",
            "pt": "Ponderação de inquéritos a agregados familiares sob não resposta em freguesias rurais",
        },
        abstracts={
            "en": [
                "Sampling questionnaires were mailed to 640 households across "
                "twelve parishes.",
                "Response weighting followed the calibration approach of the "
                "2011 census frame.",
                "Missing values were imputed with chained equations over 25 "
                "iterations.",
            ],
            "pt": [
                "Os questionários de amostragem foram enviados por correio a "
                "640 agregados familiares de doze freguesias.",
                "A ponderação das respostas seguiu a abordagem de calibração "
                "da base do censo de 2011.",
                "Os valores em falta foram imputados com equações encadeadas "
                "ao longo de 25 iterações.",
            ],
        },
        keywords=["Survey weighting", "Nonresponse", "Imputation"],
        authors=["Correia, Vasco"],
        date="2014-04-10T09:30:00Z",
        language="pt",
        doc_type="article",
        license_text="openAccess",
        license_href=CC_BY,
        journal="Boletim de Estatística Regional",
        expect_domain="general",
    ),
    PageSpec(
        repo=IPB,
        html_id=15300,
        titles={"pt": "Energia solar flutuante na albufeira do Alqueva"},
        abstracts={
            "pt": [
                "A central solar flutuante do Alqueva produziu 7.5 GWh no "
                "primeiro ano de operação.",
                "Os módulos fotovoltaicos flutuantes reduziram a evaporação "
                "da albufeira em 6200 metros cúbicos.",
                "A energia solar flutuante poderá cobrir 4% do consumo da "
                "região até 2030.",
            ],
        },
        keywords=["Energia solar", "Albufeira", "Evaporação"],
        authors=["Machado, Sofia"],
        date="2022-07-19T12:00:00Z",
        language="pt",
        doc_type="article",
        license_text="openAccess",
        license_href=CC_BY_NC,
        expect_domain="energy",
        expect_mono_langs=("pt",),
    ),
    PageSpec(
        repo=IPB,
        html_id=15301,
        titles={"en": "Linking parish records in a regional historical database"},
        abstracts={
            "en": [
                "Archival parish registers from 1750 to 1820 were transcribed "
                "into a relational database.",
                "Record linkage across baptism and marriage entries reached "
                "83% precision.",
            ],
        },
        keywords=["Record linkage", "Historical demography"],
        authors=["Amaral, Tiago"],
        date="2013-10-08T15:00:00Z",
        language="en",
        doc_type="article",
        license_text="openAccess",
        license_href=CC_BY,
        journal="Boletim de Estatística Regional",
        expect_domain="general",
        expect_mono_langs=("en",),
    ),
    # ------------------------------------------------------------------
    # Filter-rule records: each mines exactly one pair that a specific
    # rule then rejects.
    PageSpec(
        repo=IPB,
        html_id=15400,
        abstracts={
            "en": ["Acta Universitatis Lusitaniae volume 12 fasciculus 3 editio photographica."],
            "pt": ["Acta Universitatis Lusitaniae volume 12 fasciculus 3 editio photographica."],
        },
        keywords=["Facsimile"],
        authors=["Ramos, Beatriz"],
        date="2012-01-25T10:10:10Z",
        language="pt",
        doc_type="other",
        license_text="openAccess",
        license_href=CC_BY,
        expect_domain="general",
        expect_rejected_by="identical",
    ),
    PageSpec(
        repo=IPB,
        html_id=15401,
        abstracts={
            "en": ["44 17 2016 2017 2018 2019 10198 14638."],
            "pt": ["44 17 2016 2017 2018 2019 10198 14638"],
        },
        keywords=["Tabela de contagens"],
        authors=["Ramos, Beatriz"],
        date="2012-02-25T10:10:10Z",
        language="pt",
        doc_type="other",
        license_text="openAccess",
        license_href=CC_BY,
        expect_domain="general",
        expect_rejected_by="digits_only",
    ),
    PageSpec(
        repo=IPB,
        html_id=15402,
        abstracts={
            "en": [
                "https://dados.example.pt/conjunto/energia-eolica-2019 "
                "https://dados.example.pt/codigo/mineracao"
            ],
            "pt": [
                "https://dados.example.pt/conjunto/energia-eolica-2019 "
                "https://dados.example.pt/codigo/mineracao-pt"
            ],
        },
        keywords=["Dados abertos"],
        authors=["Ramos, Beatriz"],
        date="2012-03-25T10:10:10Z",
        language="pt",
        doc_type="other",
        license_text="openAccess",
        license_href=CC_BY,
        expect_domain="general",
        expect_rejected_by="url_email",
    ),
    PageSpec(
        repo=IPB,
        html_id=15403,
        abstracts={
            "en": [_too_long_words("Inventory codes", "alpha")],
            "pt": [_too_long_words("Códigos inventário", "alfa")],
        },
        keywords=["Inventário"],
        authors=["Ramos, Beatriz"],
        date="2012-04-25T10:10:10Z",
        language="pt",
        doc_type="other",
        license_text="openAccess",
        license_href=CC_BY,
        expect_domain="general",
        expect_rejected_by="too_long",
    ),
    PageSpec(
        repo=IPB,
        html_id=15404,
        abstracts={
            "en": [
                "This study analyses industrial sector development across "
                "European regions."
            ],
            # Spanish text declared as Portuguese: the language filter
            # must catch the contradiction.
            "pt": [
                "Este estudio analiza el desarrollo del sector industrial en "
                "las regiones europeas."
            ],
        },
        keywords=["Setor industrial"],
        authors=["Ramos, Beatriz"],
        date="2012-05-25T10:10:10Z",
        language="pt",
        doc_type="other",
        license_text="openAccess",
        license_href=CC_BY,
        expect_domain="general",
        expect_rejected_by="wrong_language",
    ),
    # ------------------------------------------------------------------
    # Metadata-only record: the title is under the minimum length and
    # there is no abstract, so extraction must warn and keep going.
    PageSpec(
        repo=IPB,
        html_id=15500,
        titles={"pt": "Dados suplementares"},
        keywords=["Anexos"],
        authors=["Ramos, Beatriz"],
        date="2012-06-25T10:10:10Z",
        language="pt",
        doc_type="other",
        license_text="restrictedAccess",
        expect_domain="general",
        expect_no_text=True,
    ),
    # Keyword counts in two domains at once must fall back to general.
    PageSpec(
        repo=IPB,
        html_id=15600,
        titles={"en": "Cross-disciplinary training audits in energy and oncology"},
        abstracts={
            "en": [
                "Renewable energy curricula were compared with oncology "
                "outreach programmes across twelve universities.",
                "Survey scores covered both solar energy laboratories and "
                "chemotherapy teaching wards.",
            ],
        },
        keywords=["Curricula", "Training audits"],
        authors=["Quintela, Margarida"],
        date="2015-08-12T13:00:00Z",
        language="en",
        doc_type="article",
        license_text="openAccess",
        license_href=CC_BY,
        expect_domain="general",
        expect_mono_langs=("en",),
    ),
    # ------------------------------------------------------------------
    # Second repository: meta-tag markup, cancer and neuroscience pairs.
    PageSpec(
        repo=DIAL,
        html_id=201,
        titles={
            "en": "Digital tomosynthesis in population breast cancer screening",
            "es": "Tomosíntesis digital en el cribado poblacional del cáncer de mama",
        },
        abstracts={
            "en": [
                "Breast cancer screening with digital tomosynthesis detected "
                "6.3 carcinomas per 1000 examinations.",
                "Recall rates fell from 61 to 43 per 1000 after double "
                "reading was introduced.",
                "Interval cancer incidence stayed at 1.9 per 1000 screened "
                "women over 24 months.",
            ],
            "es": [
                "El cribado de cáncer de mama con tomosíntesis digital "
                "detectó 6.3 carcinomas por cada 1000 exploraciones.",
                "Las tasas de rellamada bajaron de 61 a 43 por 1000 tras "
                "introducir la doble lectura.",
                "La incidencia de cáncer de intervalo se mantuvo en 1.9 por "
                "1000 mujeres cribadas durante 24 meses.",
            ],
        },
        keywords=["Screening", "Tomosynthesis", "Mammography"],
        authors=["García, Lucía", "Moreau, Anne"],
        publishers=["Presses universitaires de Louvain"],
        date="2019-04-15",
        language="en",
        doc_type="article",
        license_text="open access",
        license_href=CC_BY,
        journal="Revue médicale de Louvain",
        citation="García, L.; Moreau, A. Revue médicale de Louvain 74 (2019) 112-120.",
        expect_domain="cancer",
    ),
    PageSpec(
        repo=DIAL,
        html_id=202,
        titles={
            "en": "Adjuvant docetaxel chemotherapy outcomes in stage II disease",
            "es": "Resultados de la quimioterapia adyuvante con docetaxel en estadio II",
        },
        abstracts={
            "en": [
                "Adjuvant chemotherapy with docetaxel improved five-year "
                "survival to 78% in stage II patients.",
                "Neutropenia of grade 3 occurred in 12% of the 480 treatment "
                "cycles.",
                "Circulating tumor DNA fell below detection in 64% of "
                "responders by week 9.",
            ],
            "es": [
                "La quimioterapia adyuvante con docetaxel mejoró la "
                "supervivencia a cinco años hasta el 78% en pacientes en "
                "estadio II.",
                "Se registró neutropenia de grado 3 en el 12% de los 480 "
                "ciclos de tratamiento.",
                "El ADN tumoral circulante cayó por debajo del límite de "
                "detección en el 64% de los respondedores en la semana 9.",
            ],
        },
        keywords=["Chemotherapy", "Docetaxel", "Survival analysis"],
        authors=["Peeters, Jan"],
        publishers=["Presses universitaires de Louvain"],
        date="2020-10-02",
        language="en",
        doc_type="article",
        license_text="open access",
        license_href=CC_BY,
        journal="Revue médicale de Louvain",
        expect_domain="cancer",
    ),
    PageSpec(
        repo=DIAL,
        html_id=203,
        titles={
            "en": "Dose escalation after prostatectomy: a single-centre radiotherapy series",
            "es": "Escalada de dosis tras prostatectomía: serie de radioterapia de un solo centro",
        },
        abstracts={
            "en": [
                "Radiotherapy dose escalation to 74 Gy reduced local "
                "recurrence after prostatectomy.",
                "Acute toxicity of grade 2 affected 19% of the 240 "
                "irradiated patients.",
            ],
            "es": [
                "La escalada de dosis de radioterapia hasta 74 Gy redujo la "
                "recurrencia local tras la prostatectomía.",
                "La toxicidad aguda de grado 2 afectó al 19% de los 240 "
                "pacientes irradiados.",
            ],
        },
        keywords=["Radiotherapy", "Prostatectomy"],
        authors=["Vandenberg, Sofie"],
        publishers=["Presses universitaires de Louvain"],
        date="2021-01-20",
        language="en",
        doc_type="article",
        license_text="open access",
        license_href=CC_BY,
        journal="Revue médicale de Louvain",
        lang_attrs=False,  # abstracts carry no lang attribute: identifier fallback
        expect_domain="cancer",
    ),
    PageSpec(
        repo=DIAL,
        html_id=301,
        titles={
            "en": "Hippocampus atrophy trajectories in mild cognitive impairment",
            "fr": "Trajectoires d'atrophie de l'hippocampe dans le trouble cognitif léger",
        },
        abstracts={
            "en": [
                "Hippocampus volume declined 2.4% per year in the 156 "
                "participants with mild impairment.",
                "Diffusion imaging showed fornix integrity predicting recall "
                "scores at month 18.",
                "Synaptic density markers in spinal fluid correlated with "
                "memory decline.",
            ],
            "fr": [
                "Le volume de l'hippocampe a diminué de 2.4% par an chez les "
                "156 participants avec trouble léger.",
                "L'imagerie de diffusion a montré que l'intégrité du fornix "
                "prédisait les scores de rappel au mois 18.",
                "Les marqueurs de densité synaptique dans le liquide "
                "céphalorachidien étaient corrélés au déclin mnésique.",
            ],
        },
        keywords=["Hippocampus", "Cognitive impairment", "MRI"],
        authors=["Lefèvre, Claire", "Dubois, Marc"],
        publishers=["Presses universitaires de Louvain"],
        date="2018-11-11",
        language="fr",
        doc_type="doctoralThesis",
        license_text="open access",
        license_href=CC_BY,
        expect_domain="neuroscience",
    ),
    PageSpec(
        repo=DIAL,
        html_id=302,
        titles={
            "en": "Cortical thinning and alpha power in early Alzheimer disease",
            "fr": "Amincissement cortical et puissance alpha au stade précoce de la maladie d'Alzheimer",
        },
        abstracts={
            "en": [
                "Cortex thickness mapping across 96 regions identified early "
                "parietal thinning.",
                "The neuron counts in layer V fell 11% in the post-mortem "
                "Alzheimer cohort.",
                "Electroencephalography power in the alpha band dropped with "
                "tau burden.",
            ],
            "fr": [
                "La cartographie de l'épaisseur du cortex sur 96 régions a "
                "identifié un amincissement pariétal précoce.",
                "Le nombre de neurones de la couche V a chuté de 11% dans la "
                "cohorte post-mortem Alzheimer.",
                "La puissance de l'électroencéphalographie dans la bande "
                "alpha diminuait avec la charge de tau.",
            ],
        },
        keywords=["Cortex", "Electroencephalography", "Alzheimer"],
        authors=["Janssens, Pieter"],
        publishers=["Presses universitaires de Louvain"],
        date="2022-03-30",
        language="fr",
        doc_type="article",
        license_text="open access",
        license_href=CC_BY,
        journal="Archives de neurologie de Louvain",
        expect_domain="neuroscience",
    ),
    PageSpec(
        repo=DIAL,
        html_id=303,
        titles={"fr": "Stimulation du nerf vague dans l'épilepsie pharmacorésistante"},
        abstracts={
            "fr": [
                "La stimulation du nerf vague a réduit la fréquence des "
                "crises de 38% chez 62 patients.",
                "Les enregistrements intracrâniens ont localisé les décharges "
                "dans l'hippocampe antérieur.",
            ],
        },
        keywords=["Épilepsie", "Stimulation"],
        authors=["Dubois, Marc"],
        publishers=["Presses universitaires de Louvain"],
        date="2017-06-06",
        language="fr",
        doc_type="article",
        license_text="open access",
        license_href=CC_BY,
        journal="Archives de neurologie de Louvain",
        expect_domain="neuroscience",
        expect_mono_langs=("fr",),
    ),
    PageSpec(
        repo=DIAL,
        html_id=401,
        titles={
            "en": "Smart grid demand response in the Guimarães distribution network",
            "pt": "Resposta da procura em redes inteligentes na rede de distribuição de Guimarães",
        },
        abstracts={
            "en": [
                "Smart grid pilots in Guimarães balanced 3700 kW of "
                "distributed photovoltaic capacity.",
                "Demand response contracts shifted 920 MWh of consumption to "
                "off-peak hours in 2021.",
                "Battery containers of 2.4 MWh smoothed the evening ramp at "
                "the Azurém substation.",
            ],
            "pt": [
                "Projetos-piloto de redes inteligentes em Guimarães "
                "equilibraram 3700 kW de capacidade fotovoltaica distribuída.",
                "Contratos de resposta da procura deslocaram 920 MWh de "
                "consumo para horas de vazio em 2021.",
                "Contentores de baterias de 2.4 MWh suavizaram a rampa "
                "noturna na subestação de Azurém.",
            ],
        },
        keywords=["Smart grid", "Demand response", "Batteries"],
        authors=["Oliveira, Nuno", "Martins, Rita"],
        publishers=["Presses universitaires de Louvain"],
        date="2022-09-01",
        language="en",
        doc_type="article",
        license_text="open access",
        license_href=CC_BY,
        journal="Journal of Iberian Energy Systems",
        expect_domain="energy",
        expect_eligible=True,
    ),
    PageSpec(
        repo=DIAL,
        html_id=402,
        titles={
            "en": "Wave power as renewable energy off Viana do Castelo",
            "pt": "A energia das ondas como energia renovável ao largo de Viana do Castelo",
        },
        abstracts={
            "en": [
                "Ocean wave converters moored off Viana do Castelo produced "
                "610 MWh during trials.",
                "Mooring line tension peaked at 410 kN in the February "
                "storms.",
                "Power take-off efficiency improved from 61% to 73% after "
                "the 2022 refit.",
            ],
            "pt": [
                "Conversores de energia das ondas ancorados ao largo de Viana "
                "do Castelo produziram 610 MWh durante os ensaios.",
                "A tensão das linhas de amarração atingiu um pico de 410 kN "
                "nas tempestades de fevereiro.",
                "A eficiência de extração de potência melhorou de 61% para "
                "73% após a renovação de 2022.",
            ],
        },
        keywords=["Wave energy", "Mooring", "Power take-off"],
        authors=["Figueiredo, Hugo"],
        publishers=["Presses universitaires de Louvain"],
        date="2023-02-14",
        language="en",
        doc_type="doctoralThesis",
        license_text="open access",
        license_href=CC_BY,
        expect_domain="energy",
        expect_eligible=True,
    ),
    PageSpec(
        repo=DIAL,
        html_id=501,
        titles={"es": "Inmunoterapia combinada en melanoma avanzado: resultados a dos años"},
        abstracts={
            "es": [
                "El melanoma avanzado respondió a la inmunoterapia combinada "
                "en el 44% de los 130 casos.",
                "La mediana de supervivencia libre de progresión alcanzó los "
                "11.5 meses.",
            ],
        },
        keywords=["Melanoma", "Inmunoterapia"],
        authors=["Ibáñez, Carmen"],
        publishers=["Presses universitaires de Louvain"],
        date="2021-12-09",
        language="es",
        doc_type="article",
        license_text="open access",
        license_href=CC_BY,
        journal="Revue médicale de Louvain",
        expect_domain="cancer",
        expect_mono_langs=("es",),
    ),
]

_LABELS_PT = {"titles": "Título:", "abstracts": "Resumo:"}
_LABELS_EN = {"titles": "Title:", "abstracts": "Abstract:"}


def esc(text: str) -> str:
    return html.escape(text, quote=True)


def render_dspace(page: PageSpec) -> str:
    rows = []

    def row(label: str, value_html: str, lang: str | None = None) -> None:
        lang_attr = f' lang="{esc(lang)}"' if lang else ""
        rows.append(
            f'<tr><td class="metadataFieldLabel">{esc(label)}</td>'
            f'<td class="metadataFieldValue"{lang_attr}>{value_html}</td></tr>'
        )

    for lang in sorted(page.titles):
        label = _LABELS_PT["titles"] if lang == "pt" else _LABELS_EN["titles"]
        row(label, esc(page.titles[lang]), lang if page.lang_attrs else None)
    for author in page.authors:
        row("Author:", esc(author))
    if page.keywords:
        row("Keywords:", esc("; ".join(page.keywords)))
    for lang in sorted(page.abstracts):
        label = _LABELS_PT["abstracts"] if lang == "pt" else _LABELS_EN["abstracts"]
        text = " ".join(page.abstracts[lang])
        row(label, esc(text), lang if page.lang_attrs else None)
    if page.date:
        row("Available:", esc(page.date))
    if page.language:
        row("Language:", esc(page.language))
    if page.doc_type:
        row("Type:", esc(page.doc_type))
    for publisher in page.publishers:
        row("Publisher:", esc(publisher))
    if page.journal:
        row("Journal:", esc(page.journal))
    if page.citation:
        row("Citation:", esc(page.citation))
    row("URI:", f'<a href="{esc(page.uri)}">{esc(page.uri)}</a>')
    if page.license_text:
        if page.license_href:
            value = f'<a href="{esc(page.license_href)}">{esc(page.license_text)}</a>'
        else:
            value = esc(page.license_text)
        row("Access:", value)

    table = "\n".join(rows)
    return f"""<!DOCTYPE html>
<html lang="pt">
<head>
<meta charset="utf-8">
<title>Biblioteca Digital do IPB: registo {page.html_id}</title>
<meta name="citation_pdf_url" content="{esc(page.link_pdf)}">
<meta name="citation_abstract_html_url" content="{esc(page.link_html)}">
<script type="text/javascript">
var searchScope = "10198"; function expand() {{ return "Abstract: oculto"; }}
</script>
</head>
<body>
<div id="header"><a href="/">Biblioteca Digital do IPB</a> &middot; <a href="/browse">Navegar</a></div>
<!-- registo completo exportado -->
<h1 class="itemTitle">Registo {page.html_id}</h1>
<table class="itemDisplayTable">
{table}
</table>
</em>
<br>
<div id="footer">Contacto: repositorio&#64;ipb.pt &nbsp;|&nbsp; Handle {esc(page.handle)}</div>
</body>
</html>
"""


def render_meta(page: PageSpec) -> str:
    metas = []
    for lang in sorted(page.titles):
        metas.append(
            f'<meta name="citation_title" content="{esc(page.titles[lang])}"'
            f' xml:lang="{esc(lang)}">'
        )
    for author in page.authors:
        metas.append(f'<meta name="citation_author" content="{esc(author)}">')
    metas.append(f'<meta name="citation_pdf_url" content="{esc(page.link_pdf)}">')
    if page.keywords:
        metas.append(
            f'<meta name="citation_keywords" content="{esc("; ".join(page.keywords))}">'
        )
    for publisher in page.publishers:
        metas.append(f'<meta name="citation_publisher" content="{esc(publisher)}">')
    if page.journal:
        metas.append(
            f'<meta name="citation_journal_title" content="{esc(page.journal)}">'
        )

    divs = []
    for lang in sorted(page.abstracts):
        lang_attr = f' lang="{esc(lang)}"' if page.lang_attrs else ""
        text = " ".join(page.abstracts[lang])
        divs.append(f'<div class="publication-metadata"{lang_attr}>{esc(text)}</div>')

    details = []

    def detail(label: str, value_html: str) -> None:
        details.append(f"<dt>{esc(label)}</dt><dd>{value_html}</dd>")

    if page.date:
        detail("Publication date", esc(page.date))
    if page.language:
        detail("Language", esc(page.language))
    if page.doc_type:
        detail("Document type", esc(page.doc_type))
    if page.license_text:
        if page.license_href:
            value = f'<a href="{esc(page.license_href)}">{esc(page.license_text)}</a>'
        else:
            value = esc(page.license_text)
        detail("Access type", value)
    detail("Permanent URL", f'<a href="{esc(page.uri)}">{esc(page.uri)}</a>')
    if page.citation:
        detail("Bibliographic reference", esc(page.citation))

    meta_block = "\n".join(metas)
    div_block = "\n".join(divs)
    detail_block = "\n".join(details)
    return f"""<!DOCTYPE html>
<html>
<head>
<meta charset="utf-8">
{meta_block}
<title>DIAL notice {page.html_id}</title>
</head>
<body>
<main>
<nav><a href="/search">Rechercher</a></nav>
{div_block}
<dl class="record-details">
{detail_block}
</dl>
</main>
</body>
</html>
"""


def render(page: PageSpec) -> str:
    return render_dspace(page) if page.repo == IPB else render_meta(page)


# ----------------------------------------------------------------------
# Post-generation verification against the real pipeline.


def _expected_texts(page: PageSpec) -> tuple[dict[str, str], dict[str, str]]:
    titles = {
        lang: normalize_whitespace(title)
        for lang, title in page.titles.items()
        if len(normalize_whitespace(title)) >= MIN_LEN
    }
    abstracts = {}
    for lang, sentences in page.abstracts.items():
        text = normalize_whitespace(" ".join(sentences))
        if len(text) >= MIN_LEN:
            abstracts[lang] = text
    return titles, abstracts


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise AssertionError(message)


def _is_benchmark_eligible(pair: dict) -> bool:
    source_words = len(pair["source_text"].split())
    target_words = len(pair["target_text"].split())
    if min(source_words, target_words) < 3:
        return False
    if max(source_words, target_words) / min(source_words, target_words) > 1.66:
        return False
    return pair["score"] > 1.08


def verify(fixtures: Path) -> None:
    with tempfile.TemporaryDirectory() as tmp:
        cfg = PipelineConfig(
            repos_dir=fixtures / "pages",
            configs_dir=fixtures / "configs",
            output_dir=Path(tmp) / "out",
            workers=1,
            seed=0,
            benchmarks=(
                BenchmarkSpec(
                    domain="energy", lang_pair=("en", "pt"), records_to_sample=4
                ),
            ),
        )
        manifests = run_all(cfg)
        out = cfg.output_dir

        extract = manifests["extract"]
        _check(extract["pages"] == len(PAGES), "page count mismatch")
        expected_empty = sum(1 for p in PAGES if p.expect_no_text)
        _check(
            extract["records_without_text"] == expected_empty,
            f"expected {expected_empty} no-text records, "
            f"got {extract['records_without_text']}",
        )

        for page in PAGES:
            record = parse_record(
                (out / "classified" / page.repo / f"{page.html_id}.json").read_bytes()
            )
            titles, abstracts = _expected_texts(page)
            where = f"{page.repo}/{page.html_id}"
            _check(record.titles == titles, f"{where}: titles {record.titles!r}")
            _check(
                record.abstracts == abstracts,
                f"{where}: abstracts differ: {record.abstracts.keys()}",
            )
            _check(record.authors == page.authors, f"{where}: authors {record.authors}")
            _check(record.keywords == page.keywords, f"{where}: keywords {record.keywords}")
            _check(record.link_pdf == page.link_pdf, f"{where}: link_pdf {record.link_pdf}")
            _check(record.uri == page.uri, f"{where}: uri {record.uri}")
            expected_html = page.link_html if page.repo == IPB else page.uri
            _check(
                record.link_html == expected_html,
                f"{where}: link_html {record.link_html}",
            )
            _check(record.license == page.license_text, f"{where}: license {record.license}")
            _check(
                record.license_link == page.license_href,
                f"{where}: license_link {record.license_link}",
            )
            _check(record.date_available == page.date, f"{where}: date {record.date_available}")
            _check(
                record.document_language == page.language,
                f"{where}: language {record.document_language}",
            )
            _check(record.document_type == page.doc_type, f"{where}: type {record.document_type}")
            _check(record.journal == page.journal, f"{where}: journal {record.journal}")
            _check(
                record.bibliographic_citation == page.citation,
                f"{where}: citation {record.bibliographic_citation}",
            )
            _check(record.publishers == page.publishers, f"{where}: publishers")
            _check(
                record.domain == page.expect_domain,
                f"{where}: domain {record.domain} != {page.expect_domain} "
                f"(counts {record.domain_keyword_count})",
            )
            if page.expect_counts is not None:
                _check(
                    record.domain_keyword_count == page.expect_counts,
                    f"{where}: counts {record.domain_keyword_count}",
                )

        pair_rows = [
            json.loads(line)
            for line in (out / "mined" / "pairs.jsonl").read_text("utf-8").splitlines()
        ]
        by_record: dict[tuple[str, int], list[dict]] = {}
        for row in pair_rows:
            by_record.setdefault((row["repository"], row["html_id"]), []).append(row)

        eligible_energy = set()
        for page in PAGES:
            mined = by_record.get((page.repo, page.html_id), [])
            if page.expect_rejected_by:
                _check(mined != [], f"{page.repo}/{page.html_id}: no mined pair to reject")
            if page.expect_eligible:
                best = max((row["score"] for row in mined), default=0.0)
                _check(
                    any(_is_benchmark_eligible(row) for row in mined),
                    f"{page.repo}/{page.html_id}: no benchmark-eligible pair "
                    f"(best score {best:.4f})",
                )
                eligible_energy.add((page.repo, page.html_id))
        _check(
            len(eligible_energy) >= 6,
            f"want >= 6 eligible energy records, have {len(eligible_energy)}",
        )

        rejections: dict[tuple[str, int], set[str]] = {}
        for line in (out / "corpus" / "rejections.jsonl").read_text("utf-8").splitlines():
            row = json.loads(line)
            rejections.setdefault((row["repository"], row["html_id"]), set()).add(
                row["rejected_by"]
            )
        for page in PAGES:
            if page.expect_rejected_by:
                got = rejections.get((page.repo, page.html_id), set())
                _check(
                    page.expect_rejected_by in got,
                    f"{page.repo}/{page.html_id}: expected rejection "
                    f"{page.expect_rejected_by}, got {sorted(got)}",
                )

        filter_manifest = manifests["filter"]
        for rule in ("identical", "too_long", "digits_only", "wrong_language",
                     "url_email", "duplicate"):
            _check(
                filter_manifest["rejected"][rule] >= 1,
                f"rule {rule} never fired: {filter_manifest['rejected']}",
            )
        _check(
            filter_manifest["input_pairs"]
            == filter_manifest["accepted_pairs"]
            + sum(filter_manifest["rejected"].values()),
            "filter counters do not add up",
        )

        expected_corpus = [
            "en-pt/energy.jsonl",
            "en-pt/transportation.jsonl",
            "en-pt/general.jsonl",
            "en-es/cancer.jsonl",
            "en-fr/neuroscience.jsonl",
            "mono/pt/energy.txt",
            "mono/en/general.txt",
            "mono/es/cancer.txt",
            "mono/fr/neuroscience.txt",
        ]
        for rel in expected_corpus:
            _check((out / "corpus" / rel).is_file(), f"missing corpus file {rel}")

        benchmark = manifests["benchmark"]["splits"]["energy-en-pt"]
        _check(benchmark["dev"] == 2 and benchmark["test"] == 2, f"split sizes {benchmark}")

        # Determinism: a second full run must be byte-identical.
        cfg2 = replace(cfg, output_dir=Path(tmp) / "out2")
        run_all(cfg2)
        first = sorted(p.relative_to(out) for p in out.rglob("*") if p.is_file())
        second = sorted(
            p.relative_to(cfg2.output_dir)
            for p in cfg2.output_dir.rglob("*")
            if p.is_file()
        )
        _check(first == second, "output file sets differ between runs")
        for rel in first:
            _check(
                (out / rel).read_bytes() == (cfg2.output_dir / rel).read_bytes(),
                f"nondeterministic output: {rel}",
            )

        print(f"pages: {extract['pages']}, mined pairs: {manifests['mine']['pairs']}")
        print(f"accepted pairs: {filter_manifest['accepted_pairs']}")
        print(f"rejections: {filter_manifest['rejected']}")
        print(f"eligible energy records: {len(eligible_energy)}")


def main() -> int:
    root = Path(__file__).resolve().parent.parent
    fixtures = root / "tests" / "fixtures"
    pages_dir = fixtures / "pages"
    configs_dir = fixtures / "configs"
    if pages_dir.exists():
        shutil.rmtree(pages_dir)
    if configs_dir.exists():
        shutil.rmtree(configs_dir)
    configs_dir.mkdir(parents=True)
    for repo, config in CONFIGS.items():
        (configs_dir / f"{repo}.json").write_text(
            json.dumps(config, ensure_ascii=False, indent=4) + "\n", encoding="utf-8"
        )
    seen = set()
    for page in PAGES:
        key = (page.repo, page.html_id)
        assert key not in seen, f"duplicate page id {key}"
        seen.add(key)
        target = pages_dir / page.repo
        target.mkdir(parents=True, exist_ok=True)
        (target / f"{page.html_id}.html").write_text(render(page), encoding="utf-8")
    print(f"wrote {len(PAGES)} pages and {len(CONFIGS)} configs under {fixtures}")
    verify(fixtures)
    print("fixture verification passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())

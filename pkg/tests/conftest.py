import pytest

from gapping import data_path, load_table, read_conllu


@pytest.fixture(scope="session")
def gold_en():
    return read_conllu(data_path("gold_en.conllu"))


@pytest.fixture(scope="session")
def gold_sv():
    return read_conllu(data_path("gold_sv.conllu"))


@pytest.fixture(scope="session")
def table_en():
    return load_table(data_path("toy_en.txt"))


@pytest.fixture(scope="session")
def table_sv():
    return load_table(data_path("toy_sv.txt"))


@pytest.fixture(scope="session")
def by_id(gold_en, gold_sv):
    sents = {s.sent_id: s for s in list(gold_en) + list(gold_sv)}
    return lambda sid: sents[sid].copy()


def rows(*lines, comments=()):
    """CoNLL-U text from compact rows ``id form upos head deprel [deps [misc]]``."""
    out = list(comments)
    for line in lines:
        f = line.split()
        nid, form, upos, head, rel = f[:5]
        deps = f[5] if len(f) > 5 else "_"
        misc = f[6] if len(f) > 6 else "_"
        out.append("\t".join([nid, form, form.lower(), upos, "_", "_", head, rel, deps, misc]))
    return "\n".join(out) + "\n\n"

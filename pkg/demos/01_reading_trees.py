"""
Reading and writing CoNLL-U with copy nodes
===========================================

"""

# the bundled gold file holds enhanced graphs for a couple dozen gapping sentences
from gapping import data_path, read_conllu, serialize_document, split_label
doc = read_conllu(data_path("gold_en.conllu"))
print(len(doc), "sentences")

sent = next(s for s in doc if s.sent_id == "single-01")
print(sent.text)

# empty nodes (ids like 5.1) are the copies of the elided verb
for tok in sent.empty_nodes:
    print(tok.id, tok.form, tok.misc)

# DEPS is the enhanced graph: every word lists its (head, relation) pairs
for tok in sent.words:
    print(f"{str(tok.id):>4} {tok.form:<8} basic={tok.head}:{tok.deprel:<8} enhanced={tok.deps_text()}")

# serializing gives back the original bytes
with open(data_path("gold_en.conllu"), encoding="utf-8") as f:
    print("byte identical:", serialize_document(doc) == f.read())

# composite labels are just relations joined with '>'
print(split_label("conj>xcomp>obj"))

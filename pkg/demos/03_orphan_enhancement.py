"""
Rebuilding elided predicates from orphan trees
==============================================

"""

from gapping import Document, data_path, load_table, read_conllu, score_enhanced
from gapping.convert import enhanced_to_basic_orphan
from gapping.orphan import EnhanceStats, enhance_sentence_orphan

gold = read_conllu(data_path("gold_en.conllu"))
table = load_table(data_path("toy_en.txt"))

# strip the gold graphs down to plain UD trees where remnants hang off "orphan"
sent = next(s for s in gold if s.sent_id == "cluster-05")
tree = enhanced_to_basic_orphan(sent)
print(tree.text)
for tok in tree.words:
    print(f"{tok.form:<6} -> {tok.head}:{tok.deprel}")

# the enhancer copies "wants" and "write", so "a book" becomes the object of write'
out = enhance_sentence_orphan(tree, table)
for tok in out.empty_nodes:
    print("copy", tok.id, tok.form, tok.deps_text(), tok.misc)
print("book:", out[10].deps_text())

# the whole fixture: strip, rebuild, score
stats = EnhanceStats()
system = Document([enhance_sentence_orphan(enhanced_to_basic_orphan(s), table, stats=stats)
                   for s in gold])
print(stats.gaps_found, "gaps,", stats.copies, "copies")
print(score_enhanced(system, gold).as_table())

# a sentence with an argument shared by both conjuncts gets an extra edge
az = enhance_sentence_orphan(enhanced_to_basic_orphan(
    next(s for s in gold if s.sent_id == "noncontiguous-01")), table)
print(az.text)
print("Senator:", az[4].deps_text())

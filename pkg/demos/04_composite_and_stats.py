"""
Composite labels, conversion and corpus counts
==============================================

"""

from gapping import Document, corpus_stats, data_path, read_conllu, score_enhanced
from gapping.composite import enhance_sentence_composite, segment_conjuncts
from gapping.convert import enhanced_to_composite

gold = read_conllu(data_path("gold_en.conllu"))

# collapse each path through copies into one label on the surface tree
play = enhanced_to_composite(next(s for s in gold if s.sent_id == "cluster-01"))
for tok in play.words:
    print(f"{tok.form:<6} -> {tok.head}:{tok.deprel}")

# expanding the labels again inserts one copy per proper prefix
out = enhance_sentence_composite(play)
print([(str(t.id), t.form) for t in out.empty_nodes])

# two gapped conjuncts share one head; the repeated nsubj splits them
three = enhanced_to_composite(next(s for s in gold if s.sent_id == "single-05"))
deps = [(t.id, t.deprel) for t in three.words if ">" in t.deprel]
for group in segment_conjuncts(three.words[1].id, deps):
    print([three[n].form for n, _ in group.dependents])

# round trip over the whole file
system = Document([enhance_sentence_composite(enhanced_to_composite(s)) for s in gold])
print(score_enhanced(system, gold).metrics())

# corpus counts, including the GapType annotation on the remnants
print(corpus_stats(gold).as_table())

# coding: utf-8

# # Worked examples
#
# The package ships a small tagged file with one term per sentence. Each term
# should be accepted, as a whole, by one pattern of the built-in grammar.

# In[1]:

from jaterm import accepts, builtin_japanese_grammar, data_path, dump_grammar, parse_tagged_stream, term_list

grammar = builtin_japanese_grammar()
corpus = parse_tagged_stream(data_path("worked_examples.tsv").read_text(encoding="utf-8"))


# Tags come from a closed set of fourteen canonical labels. A term is just a
# sentence of tokens here, so `term_list` hands back the sentences.

# In[2]:

for term in term_list(corpus):
    tags = " ".join(t.tag.name for t in term)
    surface = " ".join(t.surface for t in term)
    print(f"{accepts(grammar, term) or '-':7} {surface:32} {tags}")


# The grammar is plain text. Dumping it gives a file that `load_grammar` (or
# `jaterm --grammar FILE`) reads back unchanged, which makes it easy to edit.

# In[3]:

print(dump_grammar(grammar))


# Scanning a longer sentence is leftmost-longest. Ten nouns in a row come out
# as one 9-token compound; the leftover noun cannot form a term on its own.

# In[4]:

from jaterm import CanonicalTag, Token, scan_sentence

nouns = tuple(Token(f"n{i}", f"n{i}", CanonicalTag.N) for i in range(10))
for c in scan_sentence(grammar, nouns):
    print(c.start, c.length, c.pattern_name)

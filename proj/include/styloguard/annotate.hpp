#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "styloguard/lemmatizer.hpp"
#include "styloguard/lexicon.hpp"
#include "styloguard/pos_tagger.hpp"
#include "styloguard/segmenter.hpp"
#include "styloguard/sentiment.hpp"
#include "styloguard/token.hpp"
#include "styloguard/tokenizer.hpp"

namespace styloguard {

// Full annotation pipeline. Pure: the same text always yields the same
// AnnotatedDocument, so documents can be processed in parallel.
inline AnnotatedDocument annotate(std::string doc_id, std::string_view text,
                                  const Lexicons& lex) {
    AnnotatedDocument doc;
    doc.doc_id = std::move(doc_id);
    doc.tokens = tokenize(text, lex);
    doc.sentences = segment_sentences(doc.tokens, lex);

    for (const Sentence& s : doc.sentences) pos_tag_sentence(doc.tokens, s.first_token, s.end_token, lex);
    for (Token& t : doc.tokens) {
        if (t.kind == TokenKind::Word) {
            t.lemma = lemmatize(t.surface, t.pos, lex);
            for (char c : t.surface) {
                if (is_ascii_alpha(c)) {
                    ++doc.letter_count;
                    if (c >= 'A' && c <= 'Z') ++doc.uppercase_letter_count;
                }
            }
        }
    }
    for (Sentence& s : doc.sentences)
        s.sentiment = sentence_sentiment(doc.tokens, s.first_token, s.end_token, lex);
    return doc;
}

}  // namespace styloguard

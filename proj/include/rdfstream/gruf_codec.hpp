#ifndef RDFSTREAM_GRUF_CODEC_HPP
#define RDFSTREAM_GRUF_CODEC_HPP

#include <string>
#include <string_view>

#include "rdfstream/rdftx_codec.hpp"
#include "rdfstream/transaction.hpp"

namespace rdfstream {

// GRUF: a compact line-oriented update format with a stateful cursor.
// Commands, one per line (LF-terminated UTF-8):
//
//   set_subject <iri>
//   set_property <iri>
//   set_graph <iri>        -- set the named-graph cursor
//   set_graph              -- clear the cursor back to the default graph
//   add  (uri|text|bnode) <value>
//   delete (uri|text|bnode) <value>
//
// `text` values run to end of line; `uri` and `bnode` take the remainder as
// a single token. add/delete emit one UpdateOp from the current cursor.
Transaction parse_gruf(std::string_view document);

// Emits cursor commands only when the cursor changes, then add/delete lines,
// preserving op order. Throws CodecError{Unserializable} for transactions
// GRUF cannot carry: non-IRI subjects, more than one context per statement,
// language-tagged or datatyped literals, or literals containing a newline.
std::string serialize_gruf(const Transaction& t);

// True when serialize_gruf(t) can represent t losslessly.
bool gruf_expressible(const Transaction& t);

} // namespace rdfstream

#endif

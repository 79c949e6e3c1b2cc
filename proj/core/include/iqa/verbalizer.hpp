#pragma once

#include <string>

#include "iqa/interpretation.hpp"
#include "iqa/knowledge_graph.hpp"

namespace iqa {

// Template-based English rendering of a query. The first variable in
// sorted order is the answer variable. SELECT reads "List all things
// ...", COUNT "How many things are there ...", ASK "Is it true that ...".
// Clauses use KG labels: "that are of type <class>", "whose <relation>
// is <entity>", "that are the <relation> of <entity>".
std::string verbalize(AnswerType at, const QueryGraph& qg, const KnowledgeGraph& kg);
std::string verbalize(const Cqi& cqi, const KnowledgeGraph& kg);

}  // namespace iqa

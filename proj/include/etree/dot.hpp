#pragma once

#include <string>

#include "etree/tree.hpp"

namespace etree {

/// Renders an event tree as a Graphviz digraph. Node ids follow preorder
/// numbering, so identical trees always serialize to identical bytes.
/// Atomic leaves are boxes, branch points are ellipses labelled with their
/// event, and branch edges carry the branch state.
std::string export_dot(const EventTree& tree);

}  // namespace etree

#include "etree/dot.hpp"

#include <sstream>

namespace etree {

namespace {

std::string escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

class DotWriter {
 public:
  explicit DotWriter(std::ostringstream& out) : out_(out) {}

  std::size_t write(const EventTree& tree) {
    const std::size_t id = next_id_++;
    switch (tree.kind()) {
      case EventTree::Kind::Atomic:
        out_ << "  n" << id << " [shape=box, label=\""
             << escape(tree.event().label()) << "\"];\n";
        break;
      case EventTree::Kind::Node:
        out_ << "  n" << id << " [shape=point, label=\"\"];\n";
        for (const EventTree& child : tree.children()) {
          const std::size_t child_id = write(child);
          out_ << "  n" << id << " -> n" << child_id << ";\n";
        }
        break;
      case EventTree::Kind::Branch:
        out_ << "  n" << id << " [shape=ellipse, label=\""
             << escape(tree.label().label()) << "\"];\n";
        for (const EventTree& child : tree.children()) {
          const std::size_t child_id = write(child);
          out_ << "  n" << id << " -> n" << child_id << " [label=\""
               << escape(tree.label().state) << "\"];\n";
        }
        break;
    }
    return id;
  }

 private:
  std::ostringstream& out_;
  std::size_t next_id_ = 0;
};

}  // namespace

std::string export_dot(const EventTree& tree) {
  std::ostringstream out;
  out << "digraph event_tree {\n";
  out << "  rankdir=LR;\n";
  DotWriter(out).write(tree);
  out << "}\n";
  return out.str();
}

}  // namespace etree

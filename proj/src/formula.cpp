#include "nalab/formula.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace nalab {

namespace detail {

struct FormulaNode {
  Op op;
  std::string name;
  const FormulaNode* a;
  const FormulaNode* b;
  std::size_t size;
  std::size_t depth;
  std::string key;
};

namespace {

struct NodeId {
  Op op;
  std::string name;
  const FormulaNode* a;
  const FormulaNode* b;
  bool operator==(const NodeId&) const = default;
};

struct NodeIdHash {
  std::size_t operator()(const NodeId& k) const {
    std::size_t h = std::hash<std::string>{}(k.name);
    h ^= std::hash<const void*>{}(k.a) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<const void*>{}(k.b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(k.op);
  }
};

// Nodes live for the whole process; handles are plain pointers.
struct InternTable {
  std::mutex mu;
  std::unordered_map<NodeId, const FormulaNode*, NodeIdHash> nodes;
};

InternTable& table() {
  static InternTable* t = new InternTable;
  return *t;
}

}  // namespace
}  // namespace detail

using detail::FormulaNode;

Formula Formula::make(Op op, std::string_view name, const FormulaNode* a, const FormulaNode* b) {
  auto& t = detail::table();
  detail::NodeId id{op, std::string(name), a, b};
  std::lock_guard lock(t.mu);
  if (auto it = t.nodes.find(id); it != t.nodes.end()) return Formula(it->second);

  auto* n = new FormulaNode{op, std::string(name), a, b, 1, 0, {}};
  switch (op) {
    case Op::Var:
      n->key = "'" + n->name;
      break;
    case Op::Bot:
      n->key = "#";
      break;
    case Op::Neg:
      n->size = 1 + a->size;
      n->depth = a->depth;
      n->key = "~" + a->key;
      break;
    case Op::Box:
      n->size = 1 + a->size;
      n->depth = 1 + a->depth;
      n->key = "[" + a->key;
      break;
    case Op::And:
    case Op::Or:
    case Op::Imp: {
      n->size = 1 + a->size + b->size;
      n->depth = std::max(a->depth, b->depth);
      const char* tag = op == Op::And ? "&(" : op == Op::Or ? "|(" : ">(";
      n->key = tag + a->key + "," + b->key + ")";
      break;
    }
  }
  t.nodes.emplace(std::move(id), n);
  return Formula(n);
}

Formula::Formula() : node_(bot().node_) {}

Formula Formula::var(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("variable name must be non-empty");
  return make(Op::Var, name, nullptr, nullptr);
}
Formula Formula::bot() {
  static const FormulaNode* n = make(Op::Bot, "", nullptr, nullptr).node_;
  return Formula(n);
}
Formula Formula::neg(Formula a) { return make(Op::Neg, "", a.node_, nullptr); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, "", a.node_, b.node_); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, "", a.node_, b.node_); }
Formula Formula::imp(Formula a, Formula b) { return make(Op::Imp, "", a.node_, b.node_); }
Formula Formula::box(Formula a) { return make(Op::Box, "", a.node_, nullptr); }
Formula Formula::box(Formula a, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) a = box(a);
  return a;
}

Op Formula::op() const { return node_->op; }
bool Formula::is_binary() const {
  return node_->op == Op::And || node_->op == Op::Or || node_->op == Op::Imp;
}
bool Formula::is_unary() const { return node_->op == Op::Neg || node_->op == Op::Box; }
const std::string& Formula::name() const { return node_->name; }
Formula Formula::lhs() const {
  assert(node_->a);
  return Formula(node_->a);
}
Formula Formula::rhs() const {
  assert(node_->b);
  return Formula(node_->b);
}
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::modal_depth() const { return node_->depth; }
const std::string& Formula::key() const { return node_->key; }

std::strong_ordering operator<=>(Formula a, Formula b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return a.key() <=> b.key();
}

namespace {
void collect(Formula a, std::set<Formula>& out) {
  if (!out.insert(a).second) return;
  if (a.is_unary()) {
    collect(a.child(), out);
  } else if (a.is_binary()) {
    collect(a.lhs(), out);
    collect(a.rhs(), out);
  }
}
}  // namespace

std::vector<Formula> subformulas(Formula a) {
  std::set<Formula> s;
  collect(a, s);
  return {s.begin(), s.end()};
}

bool is_subformula(Formula needle, Formula hay) {
  if (needle == hay) return true;
  if (needle.size() >= hay.size()) return false;
  if (hay.is_unary()) return is_subformula(needle, hay.child());
  if (hay.is_binary()) return is_subformula(needle, hay.lhs()) || is_subformula(needle, hay.rhs());
  return false;
}

BoxDecomposition box_decompose(Formula a) {
  BoxDecomposition d{0, a};
  while (d.core.is(Op::Box)) {
    d.core = d.core.child();
    ++d.prefix_len;
  }
  return d;
}

bool unbox(Formula a, std::size_t k, Formula& out) {
  for (std::size_t i = 0; i < k; ++i) {
    if (!a.is(Op::Box)) return false;
    a = a.child();
  }
  out = a;
  return true;
}

CanonicalKey canonical_key(Formula a) { return {a.size(), a.key()}; }

std::vector<std::string> variables(Formula a) {
  std::set<std::string> names;
  for (Formula s : subformulas(a))
    if (s.is(Op::Var)) names.insert(s.name());
  return {names.begin(), names.end()};
}

std::size_t canonical_index(Formula a, const std::vector<Formula>& sorted_universe) {
  auto it = std::lower_bound(sorted_universe.begin(), sorted_universe.end(), a);
  if (it == sorted_universe.end() || *it != a)
    throw std::out_of_range("formula outside the indexed universe");
  return static_cast<std::size_t>(it - sorted_universe.begin());
}

}  // namespace nalab

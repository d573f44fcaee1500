#include "nalab/sentence.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "nalab/parser.hpp"

namespace nalab {

namespace detail {

struct SentenceNode {
  SKind kind;
  std::string name;
  bool flag;
  std::uint64_t num;
  Formula formula;
  const SentenceNode* a;
  const SentenceNode* b;
  std::size_t size;
  std::string key;
};

namespace {

struct SNodeId {
  SKind kind;
  std::string name;
  bool flag;
  std::uint64_t num;
  Formula formula;
  const SentenceNode* a;
  const SentenceNode* b;
  bool operator==(const SNodeId&) const = default;
};

struct SNodeIdHash {
  std::size_t operator()(const SNodeId& k) const {
    std::size_t h = std::hash<std::string>{}(k.name);
    auto mix = [&](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(static_cast<std::size_t>(k.kind));
    mix(k.flag);
    mix(std::hash<std::uint64_t>{}(k.num));
    mix(k.formula.hash());
    mix(std::hash<const void*>{}(k.a));
    mix(std::hash<const void*>{}(k.b));
    return h;
  }
};

struct STable {
  std::mutex mu;
  std::unordered_map<SNodeId, const SentenceNode*, SNodeIdHash> nodes;
};

STable& stable() {
  static STable* t = new STable;
  return *t;
}

}  // namespace
}  // namespace detail

using detail::SentenceNode;

Sentence Sentence::make(SKind k, std::string_view name, bool flag, std::uint64_t num, Formula f,
                        const SentenceNode* a, const SentenceNode* b) {
  auto& t = detail::stable();
  detail::SNodeId id{k, std::string(name), flag, num, f, a, b};
  std::lock_guard lock(t.mu);
  if (auto it = t.nodes.find(id); it != t.nodes.end()) return Sentence(it->second);
  auto* n = new SentenceNode{k, std::string(name), flag, num, f, a, b, 1, {}};
  std::string ns = std::to_string(num) + ".";
  switch (k) {
    case SKind::Base:
      n->key = std::string(flag ? "b!" : "b'") + n->name + ";";
      break;
    case SKind::Falsum:
      n->key = "0";
      break;
    case SKind::SHat:
      n->key = "S" + ns;
      break;
    case SKind::FAtom:
      n->key = "f" + n->name + ";";
      break;
    case SKind::NeqZero:
      n->key = "z" + ns;
      break;
    case SKind::Refutes:
      n->key = "R" + ns + f.key() + ";";
      break;
    case SKind::ForAllPhi:
      n->key = "A" + f.key() + ";";
      break;
    case SKind::ExistsNegPhi:
      n->key = "E" + f.key() + ";";
      break;
    case SKind::PRg:
      n->size = 1 + a->size;
      n->key = "P" + a->key;
      break;
    case SKind::Neg:
      n->size = 1 + a->size;
      n->key = "~" + a->key;
      break;
    case SKind::And:
    case SKind::Or:
    case SKind::Imp: {
      n->size = 1 + a->size + b->size;
      const char* tag = k == SKind::And ? "&(" : k == SKind::Or ? "|(" : ">(";
      n->key = tag + a->key + "," + b->key + ")";
      break;
    }
  }
  t.nodes.emplace(std::move(id), n);
  return Sentence(n);
}

namespace {
void check_name(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("sentence atom name must be non-empty");
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      throw std::invalid_argument("invalid character in atom name '" + std::string(name) + "'");
}
}  // namespace

Sentence::Sentence() : node_(falsum().node_) {}
Sentence Sentence::base(std::string_view name, bool sigma1) {
  check_name(name);
  return make(SKind::Base, name, sigma1, 0, {}, nullptr, nullptr);
}
Sentence Sentence::falsum() {
  static const SentenceNode* n = make(SKind::Falsum, "", false, 0, {}, nullptr, nullptr).node_;
  return Sentence(n);
}
Sentence Sentence::shat(std::uint64_t i) {
  if (i == 0) throw std::invalid_argument("S(i) needs i >= 1");
  return make(SKind::SHat, "", false, i, {}, nullptr, nullptr);
}
Sentence Sentence::fatom(std::string_view var) {
  check_name(var);
  return make(SKind::FAtom, var, false, 0, {}, nullptr, nullptr);
}
Sentence Sentence::prg(Sentence s) { return make(SKind::PRg, "", false, 0, {}, s.node_, nullptr); }
Sentence Sentence::neq_zero(std::uint64_t i) { return make(SKind::NeqZero, "", false, i, {}, nullptr, nullptr); }
Sentence Sentence::refutes(Formula b, std::uint64_t i) {
  return make(SKind::Refutes, "", false, i, b, nullptr, nullptr);
}
Sentence Sentence::forall_phi(Formula b) { return make(SKind::ForAllPhi, "", false, 0, b, nullptr, nullptr); }
Sentence Sentence::exists_neg_phi(Formula b) {
  return make(SKind::ExistsNegPhi, "", false, 0, b, nullptr, nullptr);
}
Sentence Sentence::neg(Sentence a) { return make(SKind::Neg, "", false, 0, {}, a.node_, nullptr); }
Sentence Sentence::conj(Sentence a, Sentence b) { return make(SKind::And, "", false, 0, {}, a.node_, b.node_); }
Sentence Sentence::disj(Sentence a, Sentence b) { return make(SKind::Or, "", false, 0, {}, a.node_, b.node_); }
Sentence Sentence::imp(Sentence a, Sentence b) { return make(SKind::Imp, "", false, 0, {}, a.node_, b.node_); }

SKind Sentence::kind() const { return node_->kind; }
bool Sentence::is_atomic() const {
  switch (node_->kind) {
    case SKind::Neg:
    case SKind::And:
    case SKind::Or:
    case SKind::Imp:
      return false;
    default:
      return true;
  }
}
bool Sentence::is_binary() const {
  return node_->kind == SKind::And || node_->kind == SKind::Or || node_->kind == SKind::Imp;
}
const std::string& Sentence::name() const { return node_->name; }
bool Sentence::sigma1_flag() const { return node_->flag; }
std::uint64_t Sentence::num() const { return node_->num; }
Formula Sentence::formula() const { return node_->formula; }
Sentence Sentence::lhs() const {
  assert(node_->a);
  return Sentence(node_->a);
}
Sentence Sentence::rhs() const {
  assert(node_->b);
  return Sentence(node_->b);
}
std::size_t Sentence::size() const { return node_->size; }
const std::string& Sentence::key() const { return node_->key; }

std::strong_ordering operator<=>(Sentence a, Sentence b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return a.key() <=> b.key();
}

Sentence f_interp(Formula a) {
  switch (a.op()) {
    case Op::Var:
      return Sentence::fatom(a.name());
    case Op::Bot:
      return Sentence::falsum();
    case Op::Neg:
      return Sentence::neg(f_interp(a.child()));
    case Op::And:
      return Sentence::conj(f_interp(a.lhs()), f_interp(a.rhs()));
    case Op::Or:
      return Sentence::disj(f_interp(a.lhs()), f_interp(a.rhs()));
    case Op::Imp:
      return Sentence::imp(f_interp(a.lhs()), f_interp(a.rhs()));
    case Op::Box:
      return Sentence::prg(f_interp(a.child()));
  }
  return Sentence::falsum();
}

std::optional<Formula> f_inverse(Sentence s) {
  switch (s.kind()) {
    case SKind::FAtom:
      return Formula::var(s.name());
    case SKind::Falsum:
      return Formula::bot();
    case SKind::PRg:
      if (auto c = f_inverse(s.child())) return Formula::box(*c);
      return std::nullopt;
    case SKind::Neg:
      if (auto c = f_inverse(s.child())) return Formula::neg(*c);
      return std::nullopt;
    case SKind::And:
    case SKind::Or:
    case SKind::Imp: {
      auto l = f_inverse(s.lhs());
      if (!l) return std::nullopt;
      auto r = f_inverse(s.rhs());
      if (!r) return std::nullopt;
      if (s.is(SKind::And)) return Formula::conj(*l, *r);
      if (s.is(SKind::Or)) return Formula::disj(*l, *r);
      return Formula::imp(*l, *r);
    }
    default:
      return std::nullopt;
  }
}

Sentence pr_power(Sentence s, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) s = Sentence::prg(s);
  return s;
}

std::pair<std::size_t, Sentence> pr_strip(Sentence s) {
  std::size_t r = 0;
  while (s.is(SKind::PRg)) {
    s = s.child();
    ++r;
  }
  return {r, s};
}

bool pr_unstrip(Sentence s, std::size_t k, Sentence& out) {
  for (std::size_t i = 0; i < k; ++i) {
    if (!s.is(SKind::PRg)) return false;
    s = s.child();
  }
  out = s;
  return true;
}

SentenceKey sentence_key(Sentence s) { return {s.size(), s.key()}; }

std::size_t sentence_index(Sentence s, const std::vector<Sentence>& sorted_universe) {
  auto it = std::lower_bound(sorted_universe.begin(), sorted_universe.end(), s);
  if (it == sorted_universe.end() || *it != s) throw std::out_of_range("sentence outside the indexed universe");
  return static_cast<std::size_t>(it - sorted_universe.begin());
}

namespace {
void collect(Sentence s, std::set<Sentence>& out) {
  if (!out.insert(s).second) return;
  if (s.is(SKind::PRg) || s.is(SKind::Neg)) {
    collect(s.child(), out);
  } else if (s.is_binary()) {
    collect(s.lhs(), out);
    collect(s.rhs(), out);
  }
}
}  // namespace

std::vector<Sentence> subsentences(Sentence s) {
  std::set<Sentence> out;
  collect(s, out);
  return {out.begin(), out.end()};
}

namespace {

bool atom_sigma1(Sentence s) {
  switch (s.kind()) {
    case SKind::Base:
      return s.sigma1_flag();
    case SKind::Falsum:
    case SKind::SHat:
    case SKind::FAtom:
    case SKind::PRg:
    case SKind::NeqZero:
    case SKind::Refutes:
    case SKind::ExistsNegPhi:
      return true;
    default:
      return false;
  }
}

bool atom_pi1(Sentence s) {
  switch (s.kind()) {
    case SKind::Falsum:
    case SKind::NeqZero:
    case SKind::Refutes:
    case SKind::ForAllPhi:
      return true;
    default:
      return false;
  }
}

// Classes: bit 0 = Σ1, bit 1 = Π1.
unsigned classify(Sentence s) {
  switch (s.kind()) {
    case SKind::Neg: {
      unsigned c = classify(s.child());
      return ((c & 1u) << 1) | ((c >> 1) & 1u);
    }
    case SKind::And:
    case SKind::Or:
      return classify(s.lhs()) & classify(s.rhs());
    case SKind::Imp: {
      unsigned l = classify(s.lhs()), r = classify(s.rhs());
      unsigned sig = ((l >> 1) & 1u) & (r & 1u);
      unsigned pi = (l & 1u) & ((r >> 1) & 1u);
      return sig | (pi << 1);
    }
    default:
      return (atom_sigma1(s) ? 1u : 0u) | (atom_pi1(s) ? 2u : 0u);
  }
}

}  // namespace

bool is_sigma1(Sentence s) { return classify(s) & 1u; }
bool is_pi1(Sentence s) { return classify(s) & 2u; }

Sentence phi_instance(Formula b, std::uint64_t j) {
  return Sentence::imp(Sentence::conj(Sentence::neq_zero(j), Sentence::refutes(b, j)),
                       Sentence::neg(Sentence::shat(j)));
}

Sentence phi_trigger(Formula b, std::uint64_t j) {
  return Sentence::imp(phi_instance(b, j), Sentence::neg(Sentence::shat(j)));
}

std::uint64_t max_numeral(Sentence s) {
  switch (s.kind()) {
    case SKind::SHat:
    case SKind::NeqZero:
    case SKind::Refutes:
      return s.num();
    case SKind::PRg:
    case SKind::Neg:
      return max_numeral(s.child());
    case SKind::And:
    case SKind::Or:
    case SKind::Imp:
      return std::max(max_numeral(s.lhs()), max_numeral(s.rhs()));
    default:
      return 0;
  }
}

bool mentions_shat(Sentence s) {
  switch (s.kind()) {
    case SKind::SHat:
      return true;
    case SKind::PRg:
    case SKind::Neg:
      return mentions_shat(s.child());
    case SKind::And:
    case SKind::Or:
    case SKind::Imp:
      return mentions_shat(s.lhs()) || mentions_shat(s.rhs());
    default:
      return false;
  }
}

namespace {

int sprec(Sentence s) {
  switch (s.kind()) {
    case SKind::Imp:
      return 1;
    case SKind::Or:
      return 2;
    case SKind::And:
      return 3;
    default:
      return 4;
  }
}

void render(Sentence s, std::string& out) {
  auto wrap = [&](Sentence c, bool parens) {
    if (parens) out += '(';
    render(c, out);
    if (parens) out += ')';
  };
  switch (s.kind()) {
    case SKind::Base:
      out += s.name();
      if (s.sigma1_flag()) out += "^s";
      return;
    case SKind::Falsum:
      out += "0=1";
      return;
    case SKind::SHat:
      out += "S(" + std::to_string(s.num()) + ")";
      return;
    case SKind::FAtom:
      out += "F(" + s.name() + ")";
      return;
    case SKind::PRg:
      out += "Pr(";
      render(s.child(), out);
      out += ")";
      return;
    case SKind::NeqZero:
      out += std::to_string(s.num()) + "!=0";
      return;
    case SKind::Refutes:
      out += "Ref(" + render_formula(s.formula()) + ", " + std::to_string(s.num()) + ")";
      return;
    case SKind::ForAllPhi:
      out += "AllPhi(" + render_formula(s.formula()) + ")";
      return;
    case SKind::ExistsNegPhi:
      out += "ExNotPhi(" + render_formula(s.formula()) + ")";
      return;
    case SKind::Neg:
      out += '~';
      wrap(s.child(), sprec(s.child()) < 4);
      return;
    case SKind::And:
    case SKind::Or: {
      int p = sprec(s);
      wrap(s.lhs(), sprec(s.lhs()) < p);
      out += s.is(SKind::And) ? " & " : " | ";
      wrap(s.rhs(), sprec(s.rhs()) <= p);
      return;
    }
    case SKind::Imp:
      wrap(s.lhs(), sprec(s.lhs()) <= 1);
      out += " -> ";
      render(s.rhs(), out);
      return;
  }
}

}  // namespace

std::string render_sentence(Sentence s) {
  std::string out;
  render(s, out);
  return out;
}

Prop i_translate(Sentence s, AtomMap& atoms) {
  switch (s.kind()) {
    case SKind::Neg:
      return Prop::unary(Prop::Kind::Not, i_translate(s.child(), atoms));
    case SKind::And:
      return Prop::binary(Prop::Kind::And, i_translate(s.lhs(), atoms), i_translate(s.rhs(), atoms));
    case SKind::Or:
      return Prop::binary(Prop::Kind::Or, i_translate(s.lhs(), atoms), i_translate(s.rhs(), atoms));
    case SKind::Imp:
      return Prop::binary(Prop::Kind::Imp, i_translate(s.lhs(), atoms), i_translate(s.rhs(), atoms));
    default:
      return Prop::atom_of(atoms.intern(s.key()));
  }
}

}  // namespace nalab

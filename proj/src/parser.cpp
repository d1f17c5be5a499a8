#include "qwalk/parser.hpp"

#include <cctype>
#include <map>

namespace qwalk::dsl {

namespace {

const std::map<std::string, node_kind, std::less<>> kind_names = {
    {"circ", node_kind::circ},       {"path", node_kind::path},
    {"K", node_kind::complete},      {"empty", node_kind::empty},
    {"cycle", node_kind::cycle},     {"mobius", node_kind::mobius},
    {"join", node_kind::join},       {"joinpow", node_kind::joinpow},
    {"cart", node_kind::cart},
};

struct parser_state {
  std::string_view text;
  std::size_t pos = 0;

  std::size_t mark() const { return pos + 1; }  // 1-based

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      throw parse_error(std::string("expected '") + c + "'", mark());
    ++pos;
  }

  std::string name() {
    skip_ws();
    std::size_t begin = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == begin) throw parse_error("expected a construct name", mark());
    return std::string(text.substr(begin, pos - begin));
  }

  int_arg integer() {
    skip_ws();
    std::size_t begin = pos;
    if (pos < text.size() && text[pos] == 'n' &&
        (pos + 1 >= text.size() ||
         !std::isalnum(static_cast<unsigned char>(text[pos + 1])))) {
      ++pos;
      return {0, true};
    }
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1'000'000'000) throw parse_error("integer too large", begin + 1);
      ++pos;
    }
    if (pos == begin) throw parse_error("expected an integer", mark());
    if (v < 1) throw parse_error("integers must be >= 1", begin + 1);
    return {v, false};
  }
};

expr_ptr parse_node(parser_state& s) {
  s.skip_ws();
  const std::size_t name_at = s.mark();
  std::string id = s.name();
  auto it = kind_names.find(id);
  if (it == kind_names.end())
    throw parse_error("unknown construct '" + id + "'", name_at);

  auto node = std::make_shared<expr>();
  node->kind = it->second;
  s.expect('(');
  switch (node->kind) {
    case node_kind::circ: {
      node->ints.push_back(s.integer());
      s.expect(';');
      if (s.peek() != ')') {
        node->ints.push_back(s.integer());
        while (s.peek() == ',') {
          s.expect(',');
          node->ints.push_back(s.integer());
        }
      }
      break;
    }
    case node_kind::path:
    case node_kind::complete:
    case node_kind::empty:
    case node_kind::cycle:
    case node_kind::mobius: {
      s.skip_ws();
      const std::size_t at = s.mark();
      int_arg a = s.integer();
      if (node->kind == node_kind::mobius && !a.is_variable && a.value % 2 != 0)
        throw parse_error("mobius requires an even order", at);
      node->ints.push_back(a);
      break;
    }
    case node_kind::join:
    case node_kind::cart: {
      node->children.push_back(parse_node(s));
      s.expect(',');
      node->children.push_back(parse_node(s));
      break;
    }
    case node_kind::joinpow: {
      node->children.push_back(parse_node(s));
      s.expect(',');
      s.skip_ws();
      const std::size_t at = s.mark();
      int_arg a = s.integer();
      if (!a.is_variable && a.value < 2)
        throw parse_error("joinpow exponent must be >= 2", at);
      node->ints.push_back(a);
      break;
    }
  }
  s.expect(')');
  return node;
}

std::string_view kind_name(node_kind k) {
  for (const auto& [name, kind] : kind_names)
    if (kind == k) return name;
  return "?";
}

std::string int_text(const int_arg& a) {
  return a.is_variable ? "n" : std::to_string(a.value);
}

}  // namespace

expr_ptr parse_expr(std::string_view text) {
  parser_state s{text};
  expr_ptr e = parse_node(s);
  if (!s.at_end()) throw parse_error("trailing input", s.mark());
  return e;
}

std::string print_expr(const expr_ptr& e) {
  std::string out(kind_name(e->kind));
  out += '(';
  if (e->kind == node_kind::circ) {
    out += int_text(e->ints[0]);
    out += ';';
    for (std::size_t i = 1; i < e->ints.size(); ++i) {
      out += i == 1 ? " " : ", ";
      out += int_text(e->ints[i]);
    }
  } else {
    bool first = true;
    for (const auto& c : e->children) {
      if (!first) out += ", ";
      out += print_expr(c);
      first = false;
    }
    for (const auto& a : e->ints) {
      if (!first) out += ", ";
      out += int_text(a);
      first = false;
    }
  }
  out += ')';
  return out;
}

bool has_variable(const expr_ptr& e) {
  for (const auto& a : e->ints)
    if (a.is_variable) return true;
  for (const auto& c : e->children)
    if (has_variable(c)) return true;
  return false;
}

expr_ptr substitute(const expr_ptr& e, long n) {
  auto node = std::make_shared<expr>();
  node->kind = e->kind;
  for (const auto& a : e->ints) {
    int_arg out = a;
    if (a.is_variable) {
      if (n < 1) throw error("size variable must be >= 1, got " + std::to_string(n));
      out = {n, false};
    }
    node->ints.push_back(out);
  }
  if (node->kind == node_kind::mobius && node->ints[0].value % 2 != 0)
    throw error("mobius requires an even order, got " +
                std::to_string(node->ints[0].value));
  if (node->kind == node_kind::joinpow && node->ints[0].value < 2)
    throw error("joinpow exponent must be >= 2, got " +
                std::to_string(node->ints[0].value));
  for (const auto& c : e->children) node->children.push_back(substitute(c, n));
  return node;
}

graph lower(const expr_ptr& e) {
  if (has_variable(e))
    throw error("expression still contains the size variable 'n'");
  switch (e->kind) {
    case node_kind::circ: {
      const int n = static_cast<int>(e->ints[0].value);
      std::vector<int> gens;
      for (std::size_t i = 1; i < e->ints.size(); ++i)
        gens.push_back(static_cast<int>(e->ints[i].value));
      return graph::circulant(n, gens);
    }
    case node_kind::path:
      return graph::path(static_cast<int>(e->ints[0].value));
    case node_kind::complete: {
      const int n = static_cast<int>(e->ints[0].value);
      std::vector<int> gens;
      for (int d = 1; d < n; ++d) gens.push_back(d);
      return graph::circulant(n, gens);
    }
    case node_kind::empty:
      return graph::circulant(static_cast<int>(e->ints[0].value), {});
    case node_kind::cycle: {
      const int n = static_cast<int>(e->ints[0].value);
      if (n == 1) return graph::circulant(1, {});
      return graph::circulant(n, {1});
    }
    case node_kind::mobius: {
      const int n = static_cast<int>(e->ints[0].value);
      if (n % 2 != 0) throw error("mobius requires an even order");
      return graph::circulant(n, {1, n / 2});
    }
    case node_kind::join:
      return graph::join(lower(e->children[0]), lower(e->children[1]));
    case node_kind::cart:
      return graph::cartesian(lower(e->children[0]), lower(e->children[1]));
    case node_kind::joinpow: {
      const long m = e->ints[0].value;
      graph base = lower(e->children[0]);
      graph acc = base;
      for (long i = 1; i < m; ++i) acc = graph::join(std::move(acc), base);
      return acc;
    }
  }
  throw error("unreachable expression kind");
}

bool structurally_equal(const expr_ptr& a, const expr_ptr& b) {
  if (a->kind != b->kind) return false;
  if (a->ints.size() != b->ints.size() || a->children.size() != b->children.size())
    return false;
  for (std::size_t i = 0; i < a->ints.size(); ++i)
    if (a->ints[i].value != b->ints[i].value ||
        a->ints[i].is_variable != b->ints[i].is_variable)
      return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!structurally_equal(a->children[i], b->children[i])) return false;
  return true;
}

}  // namespace qwalk::dsl

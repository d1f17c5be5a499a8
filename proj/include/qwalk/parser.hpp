#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/graph.hpp"

namespace qwalk::dsl {

/// Grammar (whitespace-insensitive):
///   expr     := circ | path | K | empty | cycle | mobius | join | joinpow | cart
///   circ     := "circ" "(" int ";" [int {"," int}] ")"
///   path,K,empty,cycle,mobius := name "(" int ")"
///   join,cart := name "(" expr "," expr ")"
///   joinpow  := "joinpow" "(" expr "," int ")"
/// An int is either a positive literal or the size variable "n" (templates
/// for family classification).

struct parse_error : error {
  std::size_t offset;  // 1-based byte position of the failure

  parse_error(const std::string& what, std::size_t off)
      : error(what + " at offset " + std::to_string(off)), offset(off) {}
};

enum class node_kind { circ, path, complete, empty, cycle, mobius, join, joinpow, cart };

struct int_arg {
  long value = 0;
  bool is_variable = false;  // the literal "n"
};

struct expr;
using expr_ptr = std::shared_ptr<const expr>;

struct expr {
  node_kind kind{};
  std::vector<int_arg> ints;
  std::vector<expr_ptr> children;
};

expr_ptr parse_expr(std::string_view text);

/// Canonical rendering; parse(print(e)) reproduces e.
std::string print_expr(const expr_ptr& e);

bool has_variable(const expr_ptr& e);

/// Replace every "n" with a concrete value (revalidating mobius parity and
/// joinpow exponent).
expr_ptr substitute(const expr_ptr& e, long n);

/// Build the graph; requires a fully concrete expression.
graph lower(const expr_ptr& e);

bool structurally_equal(const expr_ptr& a, const expr_ptr& b);

}  // namespace qwalk::dsl

#include "aclaw/print.hpp"

#include <algorithm>
#include <cctype>

namespace aclaw {

namespace {

const char* const kSub[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
const char* const kSup[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};

std::string digits(long v, const char* const table[]) {
  std::string s = std::to_string(v), out;
  for (char c : s) out += c == '-' ? std::string("⁻") : std::string(table[c - '0']);
  return out;
}

bool single_letter_indeps(const SymbolTable& sym) {
  return std::all_of(sym.independents().begin(), sym.independents().end(),
                     [](const std::string& n) { return n.size() == 1; });
}

std::string jet_name(Atom a, const SymbolTable& sym, PrintStyle style) {
  const std::string& base = sym.dependents().at(static_cast<std::size_t>(a.dep()));
  std::string head = base;
  if (a.expanded()) head += style == PrintStyle::human ? digits(a.order(), kSub) : "[" + std::to_string(a.order()) + "]";
  MultiIndex J = a.deriv();
  if (J.empty()) return head;
  if (style == PrintStyle::human) {
    head += ",";
    for (int i = 0; i < J.size(); ++i) head += sym.independents()[static_cast<std::size_t>(J[i])];
    return head;
  }
  if (single_letter_indeps(sym)) {
    head += "_";
    for (int i = 0; i < J.size(); ++i) head += sym.independents()[static_cast<std::size_t>(J[i])];
    return head;
  }
  std::string s = "der(" + head;
  for (int i = 0; i < J.size(); ++i) s += ", " + sym.independents()[static_cast<std::size_t>(J[i])];
  return s + ")";
}

std::string power_suffix(int e, PrintStyle style) {
  if (e == 1) return "";
  if (style == PrintStyle::human) return digits(e, kSup);
  return "^" + std::to_string(e);
}

// "3*x^2/2", "x", "1/2"; sign handled by the caller
std::string term_body(const Term& t, const SymbolTable& sym, PrintStyle style) {
  const Rational a = t.coef.abs();
  const Rational num = a.numerator(), den = a.denominator();
  std::vector<std::string> factors;
  // function applications lead, the rest keeps canonical order
  for (const Factor& f : t.mono)
    if (f.atom.is_function()) factors.push_back(print_atom(f.atom, sym, style) + power_suffix(f.exp, style));
  for (const Factor& f : t.mono)
    if (!f.atom.is_function()) factors.push_back(print_atom(f.atom, sym, style) + power_suffix(f.exp, style));
  const char* times = style == PrintStyle::human ? "" : "*";
  std::string s;
  if (!num.is_one() || factors.empty()) s = num.to_string();
  for (const std::string& f : factors) {
    if (!s.empty()) s += (style == PrintStyle::human && !std::isdigit(static_cast<unsigned char>(s.back())) ? " " : times);
    s += f;
  }
  if (!den.is_one()) s += "/" + den.to_string();
  return s;
}

int term_degree(const Monomial& m) {
  int d = 0;
  for (const Factor& f : m) d += f.exp < 0 ? -f.exp : f.exp;
  return d;
}

std::string print_slot(const Poly& p, const SymbolTable& sym, PrintStyle style, bool* leading_negative) {
  std::vector<const Term*> order;
  for (const Term& t : p) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](const Term* a, const Term* b) {
    int da = term_degree(a->mono), db = term_degree(b->mono);
    if (da != db) return da < db;
    return a->mono < b->mono;
  });
  std::string s;
  bool first = true;
  for (const Term* t : order) {
    const bool neg = t->coef.sign() < 0;
    if (first) {
      if (leading_negative) *leading_negative = neg;
      if (neg && !leading_negative) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    s += term_body(*t, sym, style);
    first = false;
  }
  return s;
}

}  // namespace

std::string print_atom(Atom a, const SymbolTable& sym, PrintStyle style) {
  switch (a.kind()) {
    case AtomKind::independent:
      return sym.independents().at(static_cast<std::size_t>(a.index()));
    case AtomKind::parameter:
      return sym.parameters().at(static_cast<std::size_t>(a.index()));
    case AtomKind::epsilon:
      return style == PrintStyle::human ? "ε" : std::string(SymbolTable::epsilon_name());
    case AtomKind::coefficient:
      return "c[" + std::to_string(a.coeff_order()) + "," + std::to_string(a.coeff_equation()) + "," +
             std::to_string(a.coeff_index()) + "]";
    case AtomKind::jet:
      return jet_name(a, sym, style);
    case AtomKind::function: {
      std::string s = sym.functions().at(static_cast<std::size_t>(a.fn())).name;
      for (int i = 0; i < a.fn_derivs(); ++i) s += style == PrintStyle::human ? "′" : "'";
      return s + "(" + jet_name(a.argument(), sym, style) + ")";
    }
  }
  return "?";
}

std::string print(const Poly& p, const SymbolTable& sym, PrintStyle style) {
  if (p.is_zero()) return "0";
  const int top = epsilon_degree(p);
  if (top <= 0) return print_slot(p, sym, style, nullptr);
  std::vector<Poly> slots = split_by_epsilon(p, top);
  const std::string eps = style == PrintStyle::human ? "ε" : "eps";
  const char* times = style == PrintStyle::human ? "" : "*";
  std::string s;
  for (int k = 0; k <= top; ++k) {
    const Poly& slot = slots[static_cast<std::size_t>(k)];
    if (slot.is_zero()) continue;
    std::string head = k == 0 ? "" : eps + (k == 1 ? "" : power_suffix(k, style));
    if (k == 0) {
      s = print_slot(slot, sym, style, nullptr);
      continue;
    }
    if (slot.size() == 1) {
      bool neg = false;
      std::string body = print_slot(slot, sym, style, &neg);
      const bool bare_one = slot.terms()[0].mono.is_one() && slot.terms()[0].coef.abs().is_one();
      std::string piece = bare_one ? head : head + times + body;
      if (s.empty())
        s = (neg ? "-" : "") + piece;
      else
        s += (neg ? " - " : " + ") + piece;
    } else {
      std::string body = print_slot(slot, sym, style, nullptr);
      std::string piece = head + times + "(" + body + ")";
      s += s.empty() ? piece : " + " + piece;
    }
  }
  return s;
}

std::string print(const Expr& e, const SymbolTable& sym, PrintStyle style) { return print(normalize(e), sym, style); }

}  // namespace aclaw

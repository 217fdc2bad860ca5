#include "cac/print.hpp"

#include <sstream>

namespace cac {

namespace {

enum Prec { kTop = 0, kFun = 1, kArg = 2 };

class Printer {
 public:
  explicit Printer(const Signature& sig) : sig_(sig) {
    for (const auto& d : sig.symbols()) reserved_.insert(d.name);
  }

  void print(const Term& t, int prec) {
    switch (t.kind()) {
      case TermKind::Sort:
        os_ << (t.sort_value() == Sort::Star ? "*" : "box");
        return;
      case TermKind::BVar:
        if (t.index() < bound_.size())
          os_ << bound_[bound_.size() - 1 - t.index()];
        else
          os_ << '^' << t.index();
        return;
      case TermKind::FVar:
        os_ << t.name();
        return;
      case TermKind::Symb:
        if (t.symbol().value < sig_.symbol_count())
          os_ << sig_.name_of(t.symbol());
        else
          os_ << '#' << t.symbol().value;
        return;
      case TermKind::App: {
        bool paren = prec == kArg;
        if (paren) os_ << '(';
        print(t.fun(), kFun);
        os_ << ' ';
        print(t.arg(), kArg);
        if (paren) os_ << ')';
        return;
      }
      case TermKind::Abs:
      case TermKind::Prod: {
        bool paren = prec != kTop;
        if (paren) os_ << '(';
        if (is_arrow(t)) {
          print(t.domain(), kFun);
          os_ << " => ";
          bound_.push_back("_");
          print(t.body(), kTop);
          bound_.pop_back();
        } else {
          NameSet avoid = free_vars(t.body());
          avoid.insert(reserved_.begin(), reserved_.end());
          avoid.insert(bound_.begin(), bound_.end());
          std::string name = fresh_name(t.hint(), avoid);
          os_ << (t.is(TermKind::Abs) ? '[' : '(') << name << ':';
          print(t.domain(), kTop);
          os_ << (t.is(TermKind::Abs) ? "] " : ") ");
          bound_.push_back(name);
          print(t.body(), kTop);
          bound_.pop_back();
        }
        if (paren) os_ << ')';
        return;
      }
    }
  }

  std::string str() const { return os_.str(); }

 private:
  const Signature& sig_;
  NameSet reserved_;
  std::vector<std::string> bound_;
  std::ostringstream os_;
};

}  // namespace

std::string to_string(const Term& t, const Signature& sig) {
  Printer p(sig);
  p.print(t, kTop);
  return p.str();
}

std::string to_string(const Substitution& theta, const Signature& sig) {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, t] : theta.entries()) {
    if (!first) out += ", ";
    first = false;
    out += x + " := " + to_string(t, sig);
  }
  return out + "}";
}

std::string to_string(const TypingEnv& env, const Signature& sig) {
  std::string out;
  bool first = true;
  for (const auto& [x, t] : env) {
    if (!first) out += ", ";
    first = false;
    out += x + ":" + to_string(t, sig);
  }
  return out;
}

}  // namespace cac

#include "chorc/label.hpp"

#include <json.hpp>

namespace chorc {

namespace {

template <class T>
int cmp3(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int compare(const ComLabel& a, const ComLabel& b) {
  if (int c = cmp3(a.from, b.from); c != 0) return c;
  if (int c = cmp3(a.to, b.to); c != 0) return c;
  if (int c = cmp3(a.var, b.var); c != 0) return c;
  return compare(a.value, b.value);
}

int compare(const SelLabel& a, const SelLabel& b) {
  if (int c = cmp3(a.from, b.from); c != 0) return c;
  if (int c = cmp3(a.to, b.to); c != 0) return c;
  return cmp3(a.label, b.label);
}

}  // namespace

int compare(const TransitionLabel& a, const TransitionLabel& b) {
  if (int c = cmp3(a.index(), b.index()); c != 0) return c;
  struct Visitor {
    const TransitionLabel& rhs;
    int operator()(const ComLabel& x) const {
      return compare(x, std::get<ComLabel>(rhs));
    }
    int operator()(const SelLabel& x) const {
      return compare(x, std::get<SelLabel>(rhs));
    }
    int operator()(const ThenLabel& x) const {
      return cmp3(x.proc, std::get<ThenLabel>(rhs).proc);
    }
    int operator()(const ElseLabel& x) const {
      return cmp3(x.proc, std::get<ElseLabel>(rhs).proc);
    }
    int operator()(const GroupLabel& x) const {
      const auto& y = std::get<GroupLabel>(rhs);
      if (int c = cmp3(x.coms.size(), y.coms.size()); c != 0) return c;
      for (std::size_t i = 0; i < x.coms.size(); ++i)
        if (int c = compare(x.coms[i], y.coms[i]); c != 0) return c;
      if (int c = cmp3(x.sels.size(), y.sels.size()); c != 0) return c;
      for (std::size_t i = 0; i < x.sels.size(); ++i)
        if (int c = compare(x.sels[i], y.sels[i]); c != 0) return c;
      return 0;
    }
  };
  return std::visit(Visitor{b}, a);
}

bool operator==(const TransitionLabel& a, const TransitionLabel& b) {
  return compare(a, b) == 0;
}

namespace {

std::string com_text(const ComLabel& l) {
  return l.from.value + "." + to_text(l.value) + " -> " + l.to.value + "." +
         l.var.value;
}

std::string sel_text(const SelLabel& l) {
  return l.from.value + " -> " + l.to.value + "[" + l.label.value + "]";
}

}  // namespace

std::string to_text(const TransitionLabel& l) {
  struct Visitor {
    std::string operator()(const ComLabel& x) const { return com_text(x); }
    std::string operator()(const SelLabel& x) const { return sel_text(x); }
    std::string operator()(const ThenLabel& x) const {
      return "if " + x.proc.value + " then";
    }
    std::string operator()(const ElseLabel& x) const {
      return "if " + x.proc.value + " else";
    }
    std::string operator()(const GroupLabel& x) const {
      std::string out = "{";
      bool first = true;
      for (const auto& c : x.coms) {
        if (!first) out += ", ";
        out += com_text(c);
        first = false;
      }
      for (const auto& s : x.sels) {
        if (!first) out += ", ";
        out += sel_text(s);
        first = false;
      }
      return out + "}";
    }
  };
  return std::visit(Visitor{}, l);
}

std::string_view status_text(RunStatus s) {
  switch (s) {
    case RunStatus::Terminated: return "terminated";
    case RunStatus::OutOfFuel: return "out_of_fuel";
    case RunStatus::Stuck: return "stuck";
    case RunStatus::Truncated: return "truncated";
  }
  return "?";
}

int compare(const Trace& a, const Trace& b) {
  if (int c = cmp3(a.labels.size(), b.labels.size()); c != 0) return c;
  for (std::size_t i = 0; i < a.labels.size(); ++i)
    if (int c = compare(a.labels[i], b.labels[i]); c != 0) return c;
  return cmp3(static_cast<int>(a.status), static_cast<int>(b.status));
}

bool operator==(const Trace& a, const Trace& b) { return compare(a, b) == 0; }

namespace {

using nlohmann::json;

json value_json(const Value& v) {
  struct Visitor {
    json operator()(const VUnit&) const { return nullptr; }
    json operator()(const VInt& x) const { return x.value; }
    json operator()(const VBool& x) const { return x.value; }
    json operator()(const VStr& x) const { return x.value; }
    json operator()(const VTagged& x) const {
      json args = json::array();
      for (const auto& a : x.args) args.push_back(value_json(a));
      return json{{"ctor", x.ctor}, {"args", args}};
    }
  };
  return std::visit(Visitor{}, v.node);
}

json label_json(const TransitionLabel& l) {
  struct Visitor {
    json operator()(const ComLabel& x) const {
      return json{{"kind", "com"},
                  {"from", x.from.value},
                  {"to", x.to.value},
                  {"var", x.var.value},
                  {"value", value_json(x.value)}};
    }
    json operator()(const SelLabel& x) const {
      return json{{"kind", "sel"},
                  {"from", x.from.value},
                  {"to", x.to.value},
                  {"label", x.label.value}};
    }
    json operator()(const ThenLabel& x) const {
      return json{{"kind", "then"}, {"proc", x.proc.value}};
    }
    json operator()(const ElseLabel& x) const {
      return json{{"kind", "else"}, {"proc", x.proc.value}};
    }
    json operator()(const GroupLabel& x) const {
      json items = json::array();
      for (const auto& c : x.coms) items.push_back(Visitor{}(c));
      for (const auto& s : x.sels) items.push_back(Visitor{}(s));
      return json{{"kind", "group"}, {"items", items}};
    }
  };
  return std::visit(Visitor{}, l);
}

json trace_json(const Trace& t) {
  json arr = json::array();
  for (const auto& l : t.labels) arr.push_back(label_json(l));
  arr.push_back(json{{"status", std::string(status_text(t.status))}});
  return arr;
}

}  // namespace

std::string to_json_text(const Trace& t) { return trace_json(t).dump(); }

std::string to_json_text(const std::vector<Trace>& traces) {
  json arr = json::array();
  for (const auto& t : traces) arr.push_back(trace_json(t));
  return arr.dump();
}

}  // namespace chorc

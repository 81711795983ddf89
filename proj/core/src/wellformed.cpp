#include "chorc/wellformed.hpp"

#include <json.hpp>

namespace chorc {

std::string_view kind_text(ViolationKind k) {
  switch (k) {
    case ViolationKind::SameChannelClash: return "same-channel clash";
    case ViolationKind::SameCellClash: return "same-cell clash";
    case ViolationKind::ReadWriteClash: return "read-write clash";
    case ViolationKind::SelTargetClash: return "selection-target clash";
    case ViolationKind::SelfInteraction: return "self-interaction";
    case ViolationKind::UnboundCall: return "unbound call";
    case ViolationKind::EmptyGroup: return "empty group";
  }
  return "?";
}

std::string to_text(const Violation& v) {
  std::string out = v.path + ": " + std::string(kind_text(v.kind)) + ": " +
                    v.first;
  if (v.second) out += " / " + *v.second;
  return out;
}

std::string to_json_text(const std::vector<Violation>& vs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : vs) {
    nlohmann::json offenders = nlohmann::json::array();
    offenders.push_back(v.first);
    if (v.second) offenders.push_back(*v.second);
    arr.push_back(nlohmann::json{
        {"path", v.path},
        {"kind", std::string(kind_text(v.kind))},
        {"offenders", offenders},
    });
  }
  return arr.dump();
}

namespace {

std::vector<Violation> check_multicom_at(const Multicom& h,
                                         const std::string& path) {
  std::vector<Violation> out;
  const auto& coms = h.coms();
  for (const auto& c : coms)
    if (c.sender == c.receiver)
      out.push_back({ViolationKind::SelfInteraction, path, to_text(c), {}});
  for (std::size_t i = 0; i < coms.size(); ++i) {
    for (std::size_t j = 0; j < coms.size(); ++j) {
      if (i == j) continue;
      const Com& a = coms[i];
      const Com& b = coms[j];
      // Condition 1, checked once per unordered pair.
      if (i < j && a.receiver == b.receiver) {
        if (a.sender == b.sender)
          out.push_back({ViolationKind::SameChannelClash, path, to_text(a),
                         to_text(b)});
        if (a.var == b.var)
          out.push_back(
              {ViolationKind::SameCellClash, path, to_text(a), to_text(b)});
      }
      // Condition 2: a receives y at q, b is sent by q and reads y.
      if (a.receiver == b.sender && free_vars(b.expr).count(a.var) > 0)
        out.push_back(
            {ViolationKind::ReadWriteClash, path, to_text(a), to_text(b)});
    }
  }
  return out;
}

std::vector<Violation> check_multisel_at(const Multisel& phi,
                                         const std::string& path) {
  std::vector<Violation> out;
  const auto& sels = phi.sels();
  for (const auto& s : sels)
    if (s.sender == s.receiver)
      out.push_back({ViolationKind::SelfInteraction, path, to_text(s), {}});
  for (std::size_t i = 0; i < sels.size(); ++i) {
    for (std::size_t j = i + 1; j < sels.size(); ++j) {
      const Sel& a = sels[i];
      const Sel& b = sels[j];
      if (a.receiver == b.sender || a.receiver == b.receiver ||
          b.receiver == a.sender)
        out.push_back(
            {ViolationKind::SelTargetClash, path, to_text(a), to_text(b)});
    }
  }
  return out;
}

void check_into(const Chor& c, const std::string& path,
                std::vector<RecVar>& defs, std::vector<Violation>& out) {
  struct Visitor {
    const std::string& path;
    std::vector<RecVar>& defs;
    std::vector<Violation>& out;
    void operator()(const CMCom& x) const {
      if (x.group.empty())
        out.push_back({ViolationKind::EmptyGroup, path, "{}", {}});
      auto vs = check_multicom_at(x.group, path);
      out.insert(out.end(), vs.begin(), vs.end());
      check_into(*x.cont, path + ".cont", defs, out);
    }
    void operator()(const CMSel& x) const {
      if (x.group.empty())
        out.push_back({ViolationKind::EmptyGroup, path, "{}", {}});
      auto vs = check_multisel_at(x.group, path);
      out.insert(out.end(), vs.begin(), vs.end());
      check_into(*x.cont, path + ".cont", defs, out);
    }
    void operator()(const CIf& x) const {
      check_into(*x.then_branch, path + ".then", defs, out);
      check_into(*x.else_branch, path + ".else", defs, out);
    }
    void operator()(const CDef& x) const {
      defs.push_back(x.name);
      check_into(*x.body, path + ".body", defs, out);
      check_into(*x.scope, path + ".scope", defs, out);
      defs.pop_back();
    }
    void operator()(const CCall& x) const {
      for (auto it = defs.rbegin(); it != defs.rend(); ++it)
        if (*it == x.name) return;
      out.push_back({ViolationKind::UnboundCall, path, x.name.value, {}});
    }
    void operator()(const CEnd&) const {}
  };
  std::visit(Visitor{path, defs, out}, c.node);
}

}  // namespace

std::vector<Violation> check_multicom(const Multicom& h) {
  return check_multicom_at(h, "$");
}

std::vector<Violation> check_multisel(const Multisel& phi) {
  return check_multisel_at(phi, "$");
}

std::vector<Violation> check_chor(const ChorPtr& c) {
  std::vector<Violation> out;
  std::vector<RecVar> defs;
  check_into(*c, "$", defs, out);
  return out;
}

}  // namespace chorc

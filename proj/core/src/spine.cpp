#include "spine.hpp"

#include <utility>

namespace chorc::detail {

std::vector<SpineFrame> walk_spine(const ChorPtr& c) {
  std::vector<SpineFrame> frames;
  std::vector<std::pair<RecVar, ChorPtr>> env;
  std::set<RecVar> unfolded;
  ChorPtr cur = c;
  while (true) {
    if (const auto* x = std::get_if<CMCom>(&cur->node)) {
      SpineFrame f;
      f.kind = SpineFrame::Kind::MCom;
      f.mcom = x->group;
      f.cont = x->cont;
      frames.push_back(std::move(f));
      cur = x->cont;
      continue;
    }
    if (const auto* x = std::get_if<CMSel>(&cur->node)) {
      SpineFrame f;
      f.kind = SpineFrame::Kind::MSel;
      f.msel = x->group;
      f.cont = x->cont;
      frames.push_back(std::move(f));
      cur = x->cont;
      continue;
    }
    if (const auto* x = std::get_if<CDef>(&cur->node)) {
      SpineFrame f;
      f.kind = SpineFrame::Kind::Def;
      f.def_name = x->name;
      f.def_procs = x->procs;
      f.def_body = x->body;
      f.cont = x->scope;
      frames.push_back(std::move(f));
      env.emplace_back(x->name, x->body);
      cur = x->scope;
      continue;
    }
    if (const auto* x = std::get_if<CCall>(&cur->node)) {
      const ChorPtr* body = nullptr;
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == x->name) {
          body = &it->second;
          break;
        }
      }
      if (body != nullptr && unfolded.count(x->name) == 0) {
        unfolded.insert(x->name);
        cur = *body;  // lazy unfold; consumes no frame
        continue;
      }
      SpineFrame f;
      f.kind = SpineFrame::Kind::Call;
      f.call_name = x->name;
      f.call_procs = x->procs;
      frames.push_back(std::move(f));
      return frames;
    }
    if (const auto* x = std::get_if<CIf>(&cur->node)) {
      SpineFrame f;
      f.kind = SpineFrame::Kind::If;
      f.if_proc = x->proc;
      f.if_guard = x->guard;
      f.if_then = x->then_branch;
      f.if_else = x->else_branch;
      frames.push_back(std::move(f));
      return frames;
    }
    SpineFrame f;
    f.kind = SpineFrame::Kind::End;
    frames.push_back(std::move(f));
    return frames;
  }
}

ChorPtr rebuild_spine(const std::vector<SpineFrame>& frames, std::size_t count,
                      ChorPtr tail) {
  ChorPtr out = std::move(tail);
  for (std::size_t i = count; i-- > 0;) {
    const SpineFrame& f = frames[i];
    switch (f.kind) {
      case SpineFrame::Kind::MCom:
        out = Chor::mcom(f.mcom, std::move(out));
        break;
      case SpineFrame::Kind::MSel:
        out = Chor::msel(f.msel, std::move(out));
        break;
      case SpineFrame::Kind::Def:
        out = Chor::rec(f.def_name, f.def_procs, f.def_body, std::move(out));
        break;
      default:
        // Only group and definition frames precede a firing position.
        break;
    }
  }
  return out;
}

}  // namespace chorc::detail

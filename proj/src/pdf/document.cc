// Copyright 2026 The Guidegraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "guidegraph/pdf/document.h"

#include <zlib.h>

#include <algorithm>
#include <exception>
#include <map>
#include <optional>
#include <set>
#include <thread>

#include "guidegraph/base/util.h"
#include "guidegraph/pdf/errors.h"
#include "guidegraph/pdf/object.h"

namespace guidegraph::pdf {

std::string FlateDecode(std::string_view data, int64_t offset) {
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) {
    throw MalformedObject("zlib initialization failed", offset);
  }
  zs.next_in = reinterpret_cast<Bytef *>(const_cast<char *>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  std::string out;
  char buf[16384];
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    zs.next_out = reinterpret_cast<Bytef *>(buf);
    zs.avail_out = sizeof(buf);
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw MalformedObject("corrupt FlateDecode data", offset);
    }
    out.append(buf, sizeof(buf) - zs.avail_out);
    if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) break;
  }
  inflateEnd(&zs);
  return out;
}

namespace {

struct XrefEntry {
  int64_t offset = 0;
  bool in_use = false;
};

// Everything page interpretation needs, resolved up front so that pages can
// be interpreted in parallel without touching the object table.
struct PageJob {
  std::string content;
  FontMap fonts;
  BBox media_box;
  std::vector<LinkAnnotation> links;
};

class PdfFile {
 public:
  explicit PdfFile(std::string_view bytes) : bytes_(bytes) {}

  void Load() {
    if (bytes_.substr(0, 7) != "%PDF-1.") {
      throw MalformedHeader("input does not begin with %PDF-1.");
    }
    size_t sx = bytes_.rfind("startxref");
    if (sx == std::string_view::npos) {
      throw BrokenXref("no startxref keyword", -1);
    }
    PdfParser p(bytes_);
    p.set_pos(sx + 9);
    PdfObject off = p.ParseObject();
    if (!off.IsInt()) {
      throw BrokenXref("startxref is not followed by an offset",
                       static_cast<int64_t>(sx));
    }
    std::set<int64_t> visited;
    int64_t xref_offset = off.AsInt();
    bool first = true;
    while (true) {
      if (xref_offset < 0 || static_cast<size_t>(xref_offset) >= bytes_.size()) {
        throw BrokenXref("cross-reference offset out of range", xref_offset);
      }
      if (!visited.insert(xref_offset).second) {
        throw BrokenXref("cross-reference /Prev loop", xref_offset);
      }
      PdfObject trailer = ReadXrefSection(xref_offset);
      if (first) {
        trailer_ = trailer;
        first = false;
      }
      const PdfObject *prev = trailer.Find("Prev");
      if (prev == nullptr) break;
      if (!prev->IsInt()) throw BrokenXref("/Prev is not an integer", xref_offset);
      xref_offset = prev->AsInt();
    }
    if (trailer_.Find("Encrypt") != nullptr) {
      throw UnsupportedFeature("encryption", -1);
    }
  }

  const PdfObject &Resolve(const PdfObject &obj) {
    if (!obj.IsRef()) return obj;
    return ResolveRef(obj.AsRef());
  }

  const PdfObject &ResolveRef(PdfRef ref) {
    auto cached = cache_.find(ref.num);
    if (cached != cache_.end()) return cached->second;
    if (!resolving_.insert(ref.num).second) {
      throw MalformedObject("reference cycle at object " + std::to_string(ref.num),
                            -1);
    }
    PdfObject result;
    auto it = xref_.find(ref.num);
    if (it != xref_.end() && it->second.in_use) {
      int64_t at = it->second.offset;
      if (at < 0 || static_cast<size_t>(at) >= bytes_.size()) {
        throw BrokenXref("object " + std::to_string(ref.num) + " offset out of range",
                         at);
      }
      PdfParser p(bytes_);
      p.set_pos(static_cast<size_t>(at));
      result = p.ParseIndirectObject(
          ref.num, [this](PdfRef len) -> std::optional<int64_t> {
            const PdfObject &v = ResolveRef(len);
            if (v.IsInt()) return v.AsInt();
            return std::nullopt;
          });
    }
    resolving_.erase(ref.num);
    return cache_.emplace(ref.num, std::move(result)).first->second;
  }

  int64_t OffsetOf(PdfRef ref) const {
    auto it = xref_.find(ref.num);
    return it == xref_.end() ? -1 : it->second.offset;
  }

  std::string DecodeStream(const PdfStream &stream) {
    std::vector<std::string> filters;
    PdfDict dict = *stream.dict;
    if (auto it = dict.find("Filter"); it != dict.end()) {
      const PdfObject &f = Resolve(it->second);
      if (f.IsName()) {
        filters.push_back(f.AsName());
      } else if (f.IsArray()) {
        for (const PdfObject &x : f.AsArray()) filters.push_back(Resolve(x).AsName());
      }
    }
    std::string data = stream.raw;
    for (size_t i = 0; i < filters.size(); ++i) {
      const std::string &name = filters[i];
      if (name != "FlateDecode" && name != "Fl") {
        throw UnsupportedFilter(name, stream.offset);
      }
      if (auto it = dict.find("DecodeParms"); it != dict.end()) {
        const PdfObject &parms = Resolve(it->second);
        const PdfObject *pred = nullptr;
        if (parms.IsDict()) {
          pred = parms.Find("Predictor");
        } else if (parms.IsArray() && i < parms.AsArray().size()) {
          pred = Resolve(parms.AsArray()[i]).Find("Predictor");
        }
        if (pred != nullptr && pred->IsInt() && pred->AsInt() > 1) {
          throw UnsupportedFilter(name + " with /Predictor", stream.offset);
        }
      }
      data = FlateDecode(data, stream.offset);
    }
    return data;
  }

  std::vector<PageJob> CollectPages(std::vector<std::string> *warnings) {
    const PdfObject *root_ref = trailer_.Find("Root");
    if (root_ref == nullptr) throw BrokenXref("trailer has no /Root", -1);
    const PdfObject &root = Resolve(*root_ref);
    if (!root.IsDict()) throw MalformedObject("document catalog is not a dictionary", -1);
    const PdfObject *pages_ref = root.Find("Pages");
    if (pages_ref == nullptr) throw MalformedObject("catalog has no /Pages", -1);

    std::vector<std::pair<PdfRef, Inherited>> leaves;
    std::set<int> seen;
    Inherited inherited;
    WalkPageTree(*pages_ref, inherited, &leaves, &seen, 0);

    std::map<int, int> page_index_by_object;
    for (size_t i = 0; i < leaves.size(); ++i) {
      page_index_by_object[leaves[i].first.num] = static_cast<int>(i);
    }

    std::vector<PageJob> jobs;
    for (size_t i = 0; i < leaves.size(); ++i) {
      const PdfObject &page = ResolveRef(leaves[i].first);
      const Inherited &inh = leaves[i].second;
      PageJob job;
      job.media_box = inh.media_box.value_or(BBox{0, 0, 612, 792});
      if (inh.resources) job.fonts = CollectFonts(*inh.resources);
      if (const PdfObject *contents = page.Find("Contents")) {
        const PdfObject &c = Resolve(*contents);
        std::vector<const PdfObject *> parts;
        if (c.IsArray()) {
          for (const PdfObject &x : c.AsArray()) parts.push_back(&Resolve(x));
        } else {
          parts.push_back(&c);
        }
        for (const PdfObject *part : parts) {
          if (!part->IsStream()) continue;
          job.content += DecodeStream(part->AsStream());
          job.content += '\n';
        }
      }
      job.links = CollectLinks(page, root, page_index_by_object,
                               static_cast<int>(i), warnings);
      jobs.push_back(std::move(job));
    }
    return jobs;
  }

 private:
  struct Inherited {
    std::optional<BBox> media_box;
    std::optional<PdfObject> resources;
  };

  PdfObject ReadXrefSection(int64_t at) {
    PdfParser p(bytes_);
    p.set_pos(static_cast<size_t>(at));
    std::string kw = p.ReadKeyword();
    if (kw != "xref") {
      p.set_pos(static_cast<size_t>(at));
      PdfObject maybe_num = p.ParseObject(true);
      if (maybe_num.IsInt()) {
        throw UnsupportedFeature("cross-reference streams", at);
      }
      throw BrokenXref("no xref keyword at startxref offset", at);
    }
    while (true) {
      p.SkipWhitespaceAndComments();
      size_t save = p.pos();
      if (p.ReadKeyword() == "trailer") break;
      p.set_pos(save);
      PdfObject start = p.ParseObject(true);
      PdfObject count = p.ParseObject(true);
      if (!start.IsInt() || !count.IsInt() || count.AsInt() < 0) {
        throw BrokenXref("malformed xref subsection header", p.offset());
      }
      for (int64_t k = 0; k < count.AsInt(); ++k) {
        PdfObject entry_off = p.ParseObject(true);
        PdfObject entry_gen = p.ParseObject(true);
        PdfObject kind = p.ParseObject(true);
        if (!entry_off.IsInt() || !entry_gen.IsInt() || !kind.IsOperator() ||
            (kind.AsOperator() != "n" && kind.AsOperator() != "f")) {
          throw BrokenXref("malformed xref entry", p.offset());
        }
        int num = static_cast<int>(start.AsInt() + k);
        // Newer sections (read first) win over /Prev sections.
        if (xref_.count(num) == 0) {
          xref_[num] = XrefEntry{entry_off.AsInt(), kind.AsOperator() == "n"};
        }
      }
    }
    try {
      PdfObject trailer = p.ParseObject();
      if (!trailer.IsDict()) throw BrokenXref("trailer is not a dictionary", p.offset());
      return trailer;
    } catch (const MalformedObject &) {
      throw BrokenXref("unreadable trailer dictionary", p.offset());
    }
  }

  std::optional<BBox> ReadBox(const PdfObject &obj) {
    const PdfObject &o = Resolve(obj);
    if (!o.IsArray() || o.AsArray().size() != 4) return std::nullopt;
    double v[4];
    for (int i = 0; i < 4; ++i) {
      const PdfObject &n = Resolve(o.AsArray()[i]);
      if (!n.IsNumber()) return std::nullopt;
      v[i] = n.AsNumber();
    }
    return BBox{Quantize(std::min(v[0], v[2])), Quantize(std::min(v[1], v[3])),
                Quantize(std::max(v[0], v[2])), Quantize(std::max(v[1], v[3]))};
  }

  void WalkPageTree(const PdfObject &node_ref, Inherited inherited,
                    std::vector<std::pair<PdfRef, Inherited>> *leaves,
                    std::set<int> *seen, int depth) {
    if (!node_ref.IsRef()) throw MalformedObject("page tree node is not a reference", -1);
    if (depth > 64 || !seen->insert(node_ref.AsRef().num).second) {
      throw MalformedObject("page tree cycle", OffsetOf(node_ref.AsRef()));
    }
    const PdfObject &node = Resolve(node_ref);
    if (!node.IsDict()) {
      throw MalformedObject("page tree node is not a dictionary",
                            OffsetOf(node_ref.AsRef()));
    }
    if (const PdfObject *mb = node.Find("MediaBox")) {
      if (auto box = ReadBox(*mb)) inherited.media_box = box;
    }
    if (const PdfObject *res = node.Find("Resources")) {
      inherited.resources = Resolve(*res);
    }
    const PdfObject *type = node.Find("Type");
    const PdfObject *kids = node.Find("Kids");
    bool is_pages = (type != nullptr && type->IsName() && type->AsName() == "Pages") ||
                    (type == nullptr && kids != nullptr);
    if (!is_pages) {
      leaves->emplace_back(node_ref.AsRef(), inherited);
      return;
    }
    if (kids == nullptr) return;
    const PdfObject &k = Resolve(*kids);
    if (!k.IsArray()) throw MalformedObject("/Kids is not an array", -1);
    for (const PdfObject &kid : k.AsArray()) {
      WalkPageTree(kid, inherited, leaves, seen, depth + 1);
    }
  }

  FontMap CollectFonts(const PdfObject &resources) {
    FontMap fonts;
    const PdfObject *font_dict_ref = resources.Find("Font");
    if (font_dict_ref == nullptr) return fonts;
    const PdfObject &font_dict = Resolve(*font_dict_ref);
    if (!font_dict.IsDict()) return fonts;
    for (const auto &[name, ref] : font_dict.AsDict()) {
      const PdfObject &font = Resolve(ref);
      FontResource res;
      res.offset = ref.IsRef() ? OffsetOf(ref.AsRef()) : -1;
      if (const PdfObject *base = font.Find("BaseFont"); base && base->IsName()) {
        res.base_font = base->AsName();
      } else {
        res.base_font = "/" + name + " (no /BaseFont)";
      }
      res.metrics = FindStandardFont(res.base_font);
      fonts[name] = res;
    }
    return fonts;
  }

  std::optional<int> DestinationPage(const PdfObject &dest_in, const PdfObject &root,
                                     const std::map<int, int> &page_index_by_object) {
    const PdfObject *dest = &Resolve(dest_in);
    if (dest->IsName() || dest->IsString()) {
      // Named destination, PDF 1.1 style /Dests dictionary only.
      const PdfObject *dests = root.Find("Dests");
      if (dests == nullptr) return std::nullopt;
      const std::string &key = dest->IsName() ? dest->AsName() : dest->AsString();
      const PdfObject *target = Resolve(*dests).Find(key);
      if (target == nullptr) return std::nullopt;
      dest = &Resolve(*target);
      if (dest->IsDict()) {
        const PdfObject *d = dest->Find("D");
        if (d == nullptr) return std::nullopt;
        dest = &Resolve(*d);
      }
    }
    if (!dest->IsArray() || dest->AsArray().empty()) return std::nullopt;
    const PdfObject &page = dest->AsArray()[0];
    if (!page.IsRef()) return std::nullopt;
    auto it = page_index_by_object.find(page.AsRef().num);
    if (it == page_index_by_object.end()) return std::nullopt;
    return it->second;
  }

  std::vector<LinkAnnotation> CollectLinks(const PdfObject &page, const PdfObject &root,
                                           const std::map<int, int> &page_index_by_object,
                                           int page_index,
                                           std::vector<std::string> *warnings) {
    std::vector<LinkAnnotation> links;
    const PdfObject *annots_ref = page.Find("Annots");
    if (annots_ref == nullptr) return links;
    const PdfObject &annots = Resolve(*annots_ref);
    if (!annots.IsArray()) return links;
    for (const PdfObject &a_ref : annots.AsArray()) {
      const PdfObject &a = Resolve(a_ref);
      const PdfObject *subtype = a.Find("Subtype");
      if (subtype == nullptr || !subtype->IsName() || subtype->AsName() != "Link") {
        continue;
      }
      const PdfObject *rect = a.Find("Rect");
      std::optional<BBox> box = rect ? ReadBox(*rect) : std::nullopt;
      if (!box) continue;
      std::optional<int> target;
      if (const PdfObject *dest = a.Find("Dest")) {
        target = DestinationPage(*dest, root, page_index_by_object);
      } else if (const PdfObject *action = a.Find("A")) {
        const PdfObject &act = Resolve(*action);
        const PdfObject *s = act.Find("S");
        const PdfObject *d = act.Find("D");
        if (s && s->IsName() && s->AsName() == "GoTo" && d) {
          target = DestinationPage(*d, root, page_index_by_object);
        }
      }
      if (!target) {
        if (warnings) {
          warnings->push_back("page " + std::to_string(page_index) +
                              ": link annotation without an intra-document "
                              "page destination ignored");
        }
        continue;
      }
      links.push_back(LinkAnnotation{*box, *target});
    }
    return links;
  }

  std::string_view bytes_;
  std::map<int, XrefEntry> xref_;
  PdfObject trailer_;
  std::map<int, PdfObject> cache_;
  std::set<int> resolving_;
};

}  // namespace

DocumentGeometry ParseDocument(std::string_view bytes, const ParseOptions &options,
                               ParseReport *report) {
  PdfFile file(bytes);
  file.Load();
  std::vector<std::string> warnings;
  std::vector<PageJob> jobs = file.CollectPages(&warnings);

  DocumentGeometry doc;
  doc.source_digest = Sha256Hex(bytes);
  doc.pages.resize(jobs.size());
  std::vector<ContentStats> stats(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());

  auto interpret = [&](size_t i) {
    try {
      doc.pages[i] = InterpretContentStream(jobs[i].content, jobs[i].fonts,
                                            jobs[i].media_box, static_cast<int>(i),
                                            &stats[i], options.interpreter);
      doc.pages[i].links = jobs[i].links;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const size_t workers =
      std::min(jobs.size(), static_cast<size_t>(std::max(1, options.jobs)));
  if (workers <= 1) {
    for (size_t i = 0; i < jobs.size(); ++i) interpret(i);
  } else {
    std::vector<std::thread> threads;
    for (size_t t = 0; t < workers; ++t) {
      threads.emplace_back([&, t] {
        for (size_t i = t; i < jobs.size(); i += workers) interpret(i);
      });
    }
    for (std::thread &th : threads) th.join();
  }
  // Report the error of the lowest page so the outcome does not depend on
  // scheduling.
  for (const std::exception_ptr &e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (report != nullptr) {
    report->page_stats = std::move(stats);
    report->warnings = std::move(warnings);
  }
  return doc;
}

}  // namespace guidegraph::pdf

#ifndef NGRPD_JSON_IO_HPP_
#define NGRPD_JSON_IO_HPP_

// JSON encodings of every exchanged value. Readers throw InvalidInput with
// the offending path ("levels[2]", "map.x", ...); writers rely on
// nlohmann::json's sorted object keys, so dump() is byte-stable.
// Schemas: docs/formats.md.

#include <string>

#include "galois.hpp"
#include "localization.hpp"

namespace ngrpd {

  json        read_json_file(std::string const& path);
  json        parse_json(std::string const& text, std::string const& origin = "<input>");
  std::string dump(json const& j);  // two-space indent, trailing newline

  json        to_json(FiniteGroup const& g);
  FiniteGroup group_from_json(json const& j);

  json       to_json(BasedGraph const& g);
  BasedGraph graph_from_json(json const& j);

  json to_json(Site const& s);
  Site site_from_json(json const& j);

  json       to_json(Site const& site, SiteObject const& obj);
  SiteObject object_from_json(Site const& site, json const& j);
  json       to_json(Site const& site, Morphism const& f);
  Morphism   morphism_from_json(Site const& site, json const& j);

  json            to_json(FreeGroupAction const& a);
  FreeGroupAction action_from_json(json const& j);
  json            to_json(FiniteGroup const& g, GSet const& s);
  GSet            gset_from_json(FiniteGroup const& g, json const& j);

  json                to_json(FiniteSimplicialSet const& s);
  FiniteSimplicialSet simplicial_set_from_json(json const& j);
  json                to_json(SimplicialObject const& x);
  // A missing "site" means FinSets; levels may then be plain label arrays.
  SimplicialObject    simplicial_object_from_json(json const& j);
  json                to_json(SimplicialMorphism const& f);
  SimplicialMorphism  simplicial_morphism_from_json(json const& j);

  json       to_json(BasedGraph const& base, GraphCover const& c);
  GraphCover cover_from_json(BasedGraph const& base, json const& j);

  // Either an explicit table ("morphisms", "compose") or a concrete
  // category given by finite sets and generating functions ("generators").
  json              to_json(MarkedRelCategory const& c);
  MarkedRelCategory category_from_json(json const& j);

  json to_json(MarkedRelCategory const& c, Zigzag const& z);
  json to_json(MarkedRelCategory const& c, Hammock const& h);

  // {"objects": {name: simplicial object}, "morphisms": [...],
  //  "all_morphisms": bool}
  json      to_json(CfoSample const& s);
  CfoSample sample_from_json(json const& j);

}  // namespace ngrpd

#endif  // NGRPD_JSON_IO_HPP_

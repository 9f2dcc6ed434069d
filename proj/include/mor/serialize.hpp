/*
 * Copyright 2026 The MOR-SL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// JSON encodings of all data types. Every top-level document carries
// "format_version": 1.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mor/automorphism.hpp"
#include "mor/error.hpp"
#include "mor/field.hpp"
#include "mor/matrix.hpp"
#include "mor/protocol.hpp"
#include "mor/security.hpp"
#include "mor/words.hpp"

namespace mor {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

namespace detail {

template <class F>
auto parsing(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kFormat) fail(ErrorCode::kMalformedInput, e.what());
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::kMalformedInput, std::string("malformed document: ") + e.what());
  }
}

inline void check_version(const Json& j) {
  if (!j.contains("format_version") || j.at("format_version").get<int>() != kFormatVersion) {
    fail(ErrorCode::kMalformedInput, "unsupported or missing format_version");
  }
}

}  // namespace detail

// Field --------------------------------------------------------------------

inline Json to_json(const FieldSpec& spec) {
  Json mod = Json::array();
  for (const auto& c : spec.modulus()) mod.push_back(to_decimal(c));
  return Json{{"p", to_decimal(spec.p())}, {"gamma", spec.gamma()}, {"modulus", mod}};
}

inline FieldSpec field_spec_from_json(const Json& j) {
  return detail::parsing([&] {
    const BigInt p = parse_decimal(j.at("p").get<std::string>());
    const unsigned gamma = j.at("gamma").get<unsigned>();
    if (gamma == 1) return FieldSpec::prime(p);
    std::vector<BigInt> mod;
    for (const auto& c : j.at("modulus")) mod.push_back(parse_decimal(c.get<std::string>()));
    return FieldSpec::make(p, gamma, mod);
  });
}

inline Json to_json(const FieldElement& e) { return e.to_hex(); }

inline FieldElement field_element_from_json(const FieldSpec& spec, const Json& j) {
  return detail::parsing([&] { return FieldElement::from_hex(spec, j.get<std::string>()); });
}

// Matrix -------------------------------------------------------------------

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).to_hex());
    rows.push_back(std::move(row));
  }
  return Json{{"d", m.rows()}, {"rows", rows}};
}

inline Matrix matrix_from_json(const FieldSpec& spec, const Json& j) {
  return detail::parsing([&] {
    const std::size_t d = j.at("d").get<std::size_t>();
    const Json& rows = j.at("rows");
    if (rows.size() != d) fail(ErrorCode::kMalformedInput, "row count does not match d");
    Matrix m = Matrix::zero(spec, d);
    for (std::size_t r = 0; r < d; ++r) {
      if (rows[r].size() != d) fail(ErrorCode::kMalformedInput, "row length does not match d");
      for (std::size_t c = 0; c < d; ++c) m.at(r, c) = FieldElement::from_hex(spec, rows[r][c].get<std::string>());
    }
    return m;
  });
}

inline Json to_json(const Permutation& p) { return Json(p.images()); }

inline Permutation permutation_from_json(const Json& j) {
  return detail::parsing([&] { return Permutation(j.get<std::vector<std::size_t>>()); });
}

// Words --------------------------------------------------------------------

inline Json to_json(const TransvectionWord& w) {
  Json out = Json::array();
  for (const auto& l : w.letters()) out.push_back(Json::array({l.i, l.j, l.lambda.to_hex()}));
  return out;
}

inline TransvectionWord word_from_json(const FieldSpec& spec, std::size_t d, const Json& j) {
  return detail::parsing([&] {
    TransvectionWord w(spec, d);
    for (const auto& t : j) {
      if (t.size() != 3) fail(ErrorCode::kMalformedInput, "letter must be [i, j, lambda]");
      w.push_back({t[0].get<std::size_t>(), t[1].get<std::size_t>(), FieldElement::from_hex(spec, t[2].get<std::string>())});
    }
    return w;
  });
}

inline Json to_json(const CDWord& w) {
  Json out = Json::array();
  for (const auto& r : w.runs()) out.push_back(Json::array({std::string(1, r.gen), to_decimal(r.exp)}));
  return out;
}

inline CDWord cd_word_from_json(const FieldSpec& spec, std::size_t d, const Json& j) {
  return detail::parsing([&] {
    CDWord w(spec, d);
    for (const auto& t : j) {
      const std::string g = t.at(0).get<std::string>();
      if (g.size() != 1) fail(ErrorCode::kMalformedInput, "generator must be C or D");
      w.append(g[0], parse_decimal(t.at(1).get<std::string>()));
    }
    return w;
  });
}

// Automorphisms ------------------------------------------------------------

inline Json to_json(const Automorphism& phi) {
  Json images = Json::array();
  for (auto [i, j] : generator_pairs(phi.d())) {
    images.push_back(Json{{"i", i}, {"j", j}, {"matrix", to_json(phi.image(i, j))}});
  }
  return Json{{"d", phi.d()}, {"spec", to_json(phi.spec())}, {"composition", kCompositionConvention}, {"images", images}};
}

inline Automorphism automorphism_from_json(const Json& j, const FieldSpec* expected = nullptr) {
  return detail::parsing([&] {
    FieldSpec spec = field_spec_from_json(j.at("spec"));
    if (expected && !(spec == *expected)) fail(ErrorCode::kSpecMismatch, "automorphism field does not match");
    const std::size_t d = j.at("d").get<std::size_t>();
    if (j.contains("composition") && j.at("composition").get<std::string>() != kCompositionConvention) {
      fail(ErrorCode::kMalformedInput, "unknown composition convention");
    }
    std::map<std::pair<std::size_t, std::size_t>, Matrix> images;
    for (const auto& im : j.at("images")) {
      Matrix m = matrix_from_json(spec, im.at("matrix"));
      if (m.d() != d) fail(ErrorCode::kMalformedInput, "image degree does not match d");
      images.emplace(std::make_pair(im.at("i").get<std::size_t>(), im.at("j").get<std::size_t>()), std::move(m));
    }
    return Automorphism::from_images(spec, d, images);
  });
}

// Keys and ciphertexts -----------------------------------------------------

inline Json to_json(const MorParams& p) {
  return Json{{"spec", to_json(p.spec)}, {"d", p.d}, {"require_irreducible_lift", p.require_irreducible_lift}};
}

inline MorParams params_from_json(const Json& j) {
  return detail::parsing([&] {
    MorParams p;
    p.spec = field_spec_from_json(j.at("spec"));
    p.d = j.at("d").get<std::size_t>();
    p.require_irreducible_lift = j.value("require_irreducible_lift", true);
    p.validate();
    return p;
  });
}

inline Json to_json(const MorPublicKey& pk) {
  return Json{{"format_version", kFormatVersion},
              {"params", to_json(pk.params)},
              {"phi", to_json(pk.phi)},
              {"phi_m", to_json(pk.phi_m)}};
}

inline MorPublicKey public_key_from_json(const Json& j) {
  return detail::parsing([&] {
    detail::check_version(j);
    MorPublicKey pk;
    pk.params = params_from_json(j.at("params"));
    pk.phi = automorphism_from_json(j.at("phi"), &pk.params.spec);
    pk.phi_m = automorphism_from_json(j.at("phi_m"), &pk.params.spec);
    require_params(pk.params, pk.phi);
    require_params(pk.params, pk.phi_m);
    return pk;
  });
}

inline Json to_json(const MorPrivateKey& sk) {
  return Json{{"format_version", kFormatVersion},
              {"params", to_json(sk.params)},
              {"m", to_decimal(sk.m)},
              {"conjugator", to_json(sk.conjugator)}};
}

inline MorPrivateKey private_key_from_json(const Json& j) {
  return detail::parsing([&] {
    detail::check_version(j);
    MorPrivateKey sk;
    sk.params = params_from_json(j.at("params"));
    sk.m = parse_decimal(j.at("m").get<std::string>());
    sk.conjugator = matrix_from_json(sk.params.spec, j.at("conjugator"));
    if (sk.conjugator.d() != sk.params.d) fail(ErrorCode::kSpecMismatch, "conjugator degree does not match");
    return sk;
  });
}

inline Json ciphertext_body(const MorCiphertext& ct) {
  return Json{{"phi_r", to_json(ct.phi_r)}, {"payload", to_json(ct.payload)}};
}

inline Json to_json(const MorCiphertext& ct) {
  Json j{{"format_version", kFormatVersion}};
  j.update(ciphertext_body(ct));
  return j;
}

inline MorCiphertext ciphertext_body_from_json(const Json& j) {
  return detail::parsing([&] {
    MorCiphertext ct;
    try {
      ct.phi_r = automorphism_from_json(j.at("phi_r"));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInvalidAutomorphism) fail(ErrorCode::kInvalidCiphertext, e.what());
      throw;
    }
    ct.payload = matrix_from_json(ct.phi_r.spec(), j.at("payload"));
    return ct;
  });
}

inline MorCiphertext ciphertext_from_json(const Json& j) {
  return detail::parsing([&] {
    detail::check_version(j);
    return ciphertext_body_from_json(j);
  });
}

/// Message stream: one ciphertext per block.
inline Json stream_to_json(const std::vector<MorCiphertext>& blocks) {
  Json arr = Json::array();
  for (const auto& b : blocks) arr.push_back(ciphertext_body(b));
  return Json{{"format_version", kFormatVersion}, {"blocks", arr}};
}

inline std::vector<MorCiphertext> stream_from_json(const Json& j) {
  return detail::parsing([&] {
    detail::check_version(j);
    std::vector<MorCiphertext> out;
    for (const auto& b : j.at("blocks")) out.push_back(ciphertext_body_from_json(b));
    return out;
  });
}

// Reports ------------------------------------------------------------------

inline Json to_json(const SecurityEstimate& e) {
  Json j{{"format_version", kFormatVersion},
         {"d", e.d},
         {"p", to_decimal(e.p)},
         {"gamma", e.gamma},
         {"q", to_decimal(e.q)},
         {"log2_q", e.log2_q},
         {"dlp_field_exponent", e.dlp_field_exponent},
         {"target_field", e.target_field},
         {"conjugator_field_exponent", e.conjugator_field_exponent},
         {"index_calculus_log_cost", e.index_calculus_log_cost},
         {"index_calculus_constant", e.index_calculus_constant},
         {"log_base", e.log_base},
         {"index_calculus_regime", regime_name(e.index_calculus_regime)},
         {"sqrt_attack_bits", e.sqrt_attack_bits}};
  j["lift_charpoly_irreducible"] = e.lift_charpoly_irreducible ? Json(*e.lift_charpoly_irreducible) : Json(nullptr);
  j["conjugator_charpoly_irreducible"] =
      e.conjugator_charpoly_irreducible ? Json(*e.conjugator_charpoly_irreducible) : Json(nullptr);
  j["warnings"] = e.warnings;
  return j;
}

inline Json to_json(const Congruence& c) {
  return Json{{"residue", to_decimal(c.residue)}, {"modulus", to_decimal(c.modulus)}};
}

inline Json to_json(const MonomialAttackReport& r) {
  Json orbits = Json::array();
  for (const auto& o : r.orbits) {
    Json pairs = Json::array();
    for (auto [i, j] : o.pairs) pairs.push_back(Json::array({i, j}));
    Json jo{{"pairs", pairs},
            {"length", o.pairs.size()},
            {"shift", o.shift},
            {"field_dlp_instance", Json{{"base", o.base.to_hex()}, {"target", o.target.to_hex()}}},
            {"base_order", to_decimal(o.base_order)},
            {"dlog_status", dlog_status_name(o.dlog_status)}};
    if (o.dlog_status == DlogStatus::kFound) jo["congruence"] = to_json(o.congruence);
    orbits.push_back(std::move(jo));
  }
  Json j{{"format_version", kFormatVersion},
         {"model", "monomial"},
         {"beta", r.beta},
         {"beta_m", r.beta_m},
         {"nu", r.nu},
         {"m_mod_nu", r.m_mod_nu},
         {"orbits", orbits},
         {"consistent", r.consistent}};
  j["recovered"] = r.recovered ? to_json(*r.recovered) : Json(nullptr);
  return j;
}

}  // namespace mor

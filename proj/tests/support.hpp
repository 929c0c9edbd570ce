#pragma once

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "eawg/rootsystem.hpp"
#include "eawg/semilattice.hpp"

#ifndef EAWG_CORPUS_DIR
#define EAWG_CORPUS_DIR "corpus"
#endif

namespace eawg::test {

using Lists = std::vector<std::vector<int>>;

inline Lists all_subsets(int dim, int min_size = 0) {
  Lists out;
  for (std::uint32_t m = 0; m < (1u << dim); ++m) {
    if (std::popcount(m) < min_size) continue;
    out.push_back(SubsetJ(m).elements());
  }
  return out;
}

inline Lists lattice_lists(int dim) { return all_subsets(dim); }

inline Lists minimal_lists(int dim) {
  Lists out{{}};
  for (int r = 1; r <= dim; ++r) out.push_back({r});
  return out;
}

inline Lists with_extra(int dim, const Lists &extra) {
  Lists out = minimal_lists(dim);
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

inline EarsSpec make(const std::string &type, int rank, int nu, int t, const Lists &s1,
                     const Lists &s2) {
  RawSpec raw;
  raw.type = type;
  raw.rank = rank;
  raw.nullity = nu;
  raw.twist = t;
  raw.supp1 = s1;
  raw.supp2 = s2;
  return validate_spec(raw);
}

inline EarsSpec lattice_spec(const std::string &type, int rank, int nu, int t) {
  return make(type, rank, nu, t, lattice_lists(t), lattice_lists(nu - t));
}

inline Semilattice random_semilattice(std::mt19937 &rng, int dim) {
  std::vector<SubsetJ> supp;
  std::bernoulli_distribution coin(0.5);
  for (std::uint32_t m = 0; m < (1u << dim); ++m)
    if (std::popcount(m) <= 1 || coin(rng)) supp.emplace_back(m);
  return Semilattice::from_subsets(dim, supp);
}

/// Random valid spec among B2..B4, C3, C4, F4, G2 with nullity <= max_nu.
inline EarsSpec random_spec(std::mt19937 &rng, int max_nu) {
  static const std::vector<std::pair<TypeTag, int>> types{
      {TypeTag::B, 2}, {TypeTag::B, 3}, {TypeTag::B, 4}, {TypeTag::C, 3},
      {TypeTag::C, 4}, {TypeTag::F4, 4}, {TypeTag::G2, 2}};
  const auto [tag, rank] = types[std::uniform_int_distribution<std::size_t>(0, types.size() - 1)(rng)];
  const int nu = std::uniform_int_distribution<int>(0, max_nu)(rng);
  const int t = std::uniform_int_distribution<int>(0, nu)(rng);
  const bool free1 = tag == TypeTag::B;
  const bool free2 = tag == TypeTag::C || (tag == TypeTag::B && rank == 2);
  Semilattice s1 = free1 ? random_semilattice(rng, t) : Semilattice::lattice(t);
  Semilattice s2 = free2 ? random_semilattice(rng, nu - t) : Semilattice::lattice(nu - t);
  return EarsSpec::make(FiniteType::make(tag, rank), nu, t, s1, s2);
}

inline std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto &e : std::filesystem::directory_iterator(EAWG_CORPUS_DIR))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace eawg::test

// Copyright 2026 The CircuGraph Authors
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

#include "retrieval/vector_index.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "common/error.hpp"

namespace circugraph::retrieval {

VectorIndex::VectorIndex(std::optional<kg::EntityKind> role, std::size_t dimension)
    : role_(role), dim_(dimension) {
  if (dim_ == 0) throw Error(ErrorCode::kInvalidArgument, "index dimension must be positive");
}

void VectorIndex::add(std::string key, EmbeddingVector vec) {
  if (vec.components.size() != dim_) {
    throw Error(ErrorCode::kInvalidArgument, "vector for " + key + " has dimension " +
                                                 std::to_string(vec.components.size()));
  }
  if (std::find(keys_.begin(), keys_.end(), key) != keys_.end()) {
    throw Error(ErrorCode::kDuplicateDefinition, "index already holds " + key);
  }
  keys_.push_back(std::move(key));
  data_.insert(data_.end(), vec.components.begin(), vec.components.end());
}

EmbeddingVector VectorIndex::vector(std::size_t i) const {
  EmbeddingVector v;
  v.components.assign(data_.begin() + static_cast<std::ptrdiff_t>(i * dim_),
                      data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim_));
  return v;
}

std::vector<Scored> VectorIndex::top_k(const EmbeddingVector& query, std::size_t k) const {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  if (keys_.empty()) throw Error(ErrorCode::kEmptyIndex, "index is empty");
  if (query.components.size() != dim_) throw Error(ErrorCode::kInvalidArgument, "query dimension mismatch");
  std::vector<Scored> all(keys_.size());
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    const float* row = data_.data() + i * dim_;
    double s = 0;
    for (std::size_t d = 0; d < dim_; ++d) s += static_cast<double>(row[d]) * static_cast<double>(query.components[d]);
    all[i] = {keys_[i], s};
  }
  auto better = [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.key < b.key;
  };
  const std::size_t n = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(), better);
  all.resize(n);
  return all;
}

namespace {

constexpr char kMagic[8] = {'C', 'G', 'R', 'V', 'I', 'D', 'X', '1'};

template <typename T>
void put(std::ostream& out, T v) {
  static_assert(std::is_integral_v<T>);
  for (std::size_t i = 0; i < sizeof(T); ++i) out.put(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
}

template <typename T>
T get(std::istream& in) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    const int c = in.get();
    if (c == EOF) throw Error(ErrorCode::kDecode, "truncated index file");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return static_cast<T>(v);
}

}  // namespace

void VectorIndex::save(std::ostream& out) const {
  out.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(dim_));
  put<std::uint64_t>(out, keys_.size());
  put<std::uint8_t>(out, role_ ? static_cast<std::uint8_t>(*role_ == kg::EntityKind::kProvider ? 0 : 1) : 255);
  for (float f : data_) put<std::uint32_t>(out, std::bit_cast<std::uint32_t>(f));
  for (const auto& k : keys_) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(k.size()));
    out.write(k.data(), static_cast<std::streamsize>(k.size()));
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing index");
}

VectorIndex VectorIndex::load(std::istream& in) {
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw Error(ErrorCode::kDecode, "not a vector index file");
  }
  const auto dim = get<std::uint32_t>(in);
  const auto count = get<std::uint64_t>(in);
  const auto role_byte = get<std::uint8_t>(in);
  std::optional<kg::EntityKind> role;
  if (role_byte == 0) role = kg::EntityKind::kProvider;
  else if (role_byte == 1) role = kg::EntityKind::kReceiver;
  else if (role_byte != 255) throw Error(ErrorCode::kDecode, "bad role byte");
  if (dim == 0 || count > (1ULL << 32)) throw Error(ErrorCode::kDecode, "implausible index header");
  VectorIndex idx(role, dim);
  idx.data_.resize(count * dim);
  for (auto& f : idx.data_) f = std::bit_cast<float>(get<std::uint32_t>(in));
  std::set<std::string> seen;
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto len = get<std::uint32_t>(in);
    std::string key(len, '\0');
    if (len && !in.read(key.data(), len)) throw Error(ErrorCode::kDecode, "truncated key table");
    if (!seen.insert(key).second) throw Error(ErrorCode::kDecode, "repeated key " + key);
    idx.keys_.push_back(std::move(key));
  }
  if (in.peek() != EOF) throw Error(ErrorCode::kDecode, "trailing bytes after index");
  return idx;
}

void VectorIndex::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  save(out);
}

VectorIndex VectorIndex::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return load(in);
}

VectorIndex build_role_index(const kg::TripleStore& store, kg::EntityKind role, const Embedder& embedder) {
  if (role == kg::EntityKind::kResource) throw Error(ErrorCode::kInvalidArgument, "role indexes cover Provider and Receiver");
  const auto edge = role == kg::EntityKind::kProvider ? kg::vocab::provider() : kg::vocab::receiver();
  std::set<std::string> members;
  for (const auto& t : store.match(std::nullopt, edge, std::nullopt)) {
    if (kg::is_iri(t.object)) members.insert(std::get<kg::Iri>(t.object).value());
  }
  for (const auto& n : store.nodes_of_kind(role)) members.insert(n.value());
  VectorIndex idx(role, embedder.dimension());
  for (const auto& m : members) {
    const auto iri = kg::Iri::absolute(m);
    auto label = store.label_of(iri);
    idx.add(m, embedder.embed(label ? *label : m));
  }
  return idx;
}

}  // namespace circugraph::retrieval

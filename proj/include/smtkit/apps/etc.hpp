// Copyright 2026 The smtkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Size-constrained frame generation: the solver picks which elements a frame
// carries and how long each body is, then seeded byte generators fill the
// bodies in.
//
// Catalog files are S-expressions:
//
//   (catalog
//     (header-size 24)
//     (overhead 2)
//     (element (id 0) (min 0) (max 32))
//     (element (id 50) (min 1) (max 255) (optional true)))
//
// Each element is rendered as a kind byte, a length byte, overhead-2 padding
// bytes and the body, so overhead is at least 2 and bodies are at most 255
// bytes long.

#ifndef SMTKIT_APPS_ETC_HPP
#define SMTKIT_APPS_ETC_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smtkit/session.hpp"

namespace smtkit {

struct CatalogElement
{
  unsigned kind = 0;
  std::size_t body_min = 0;
  std::size_t body_max = 0;
  bool optional = false;

  bool operator==(const CatalogElement&) const = default;
};

struct ElementCatalog
{
  std::size_t header_size = 0;
  std::size_t overhead = 2;
  std::vector<CatalogElement> elements;

  /** Throws CatalogError on a malformed or inconsistent catalog. */
  static ElementCatalog parse(std::string_view text);
  static ElementCatalog load(const std::string& path);
  void validate() const;

  const CatalogElement* find(unsigned kind) const;
};

struct FrameLayout
{
  struct Item
  {
    unsigned kind = 0;
    std::size_t length = 0;
    bool operator==(const Item&) const = default;
  };
  /** Included elements in catalog order. */
  std::vector<Item> items;

  std::size_t total_size(const ElementCatalog& catalog) const;
  bool operator==(const FrameLayout&) const = default;
};

using Frame = std::vector<std::uint8_t>;

/**
 * Enumerates the layouts of one target size. The constructor pushes a scope
 * holding the size constraints; every next() blocks the layout it returns.
 * The scope is popped on destruction.
 */
class LayoutSearch
{
 public:
  LayoutSearch(Session& session, const ElementCatalog& catalog, std::size_t target);
  ~LayoutSearch();

  LayoutSearch(const LayoutSearch&) = delete;
  LayoutSearch& operator=(const LayoutSearch&) = delete;

  /** The next distinct layout, or nullopt once the search is exhausted. */
  std::optional<FrameLayout> next();
  /** Result of the most recent check. */
  const CheckResult& status() const { return d_status; }

 private:
  Session& d_session;
  const ElementCatalog& d_catalog;
  CheckResult d_status;
  bool d_done = false;
};

struct LayoutOutcome
{
  CheckResult result;
  std::optional<FrameLayout> layout;
};

LayoutOutcome solve_layout(Session& session, const ElementCatalog& catalog, std::size_t target);

/** Deterministic frame for `layout`; throws LayoutInvariantViolation. */
Frame fill_layout(const ElementCatalog& catalog, const FrameLayout& layout, std::uint64_t seed);

struct GenerateOutcome
{
  /** SAT when frames could be produced; UNSAT or UNKNOWN otherwise. */
  CheckResult result;
  std::vector<Frame> frames;
};

/**
 * `count` frames of exactly `target` bytes. Distinct layouts are used first;
 * when there are fewer layouts than frames, seeds advance per round.
 */
GenerateOutcome generate(Session& session,
                         const ElementCatalog& catalog,
                         std::size_t target,
                         std::size_t count,
                         std::uint64_t seed);

std::string to_hex(const Frame& frame);

}  // namespace smtkit

#endif

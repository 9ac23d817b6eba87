#pragma once

// Hand-built desk-scale markets exercising the interesting corners of the
// solver: complementarities with and without a stable outcome, a demand type
// that is unimodular but not totally unimodular, substitutable preferences
// whose demand type still fails total unimodularity, and the three-worker
// market used throughout the divisible-worker walkthrough tests.

#include "stablematch/market.hpp"
#include "stablematch/tech_tree.hpp"

namespace stablematch::fixtures {

// Two firms, two workers. f1 wants the pair or nothing; f2 takes them one at
// a time. No stable matching exists and the demand type fails total
// unimodularity (witness det -2).
inline Market market_no_stable() {
  Market mkt;
  mkt.n_workers = 2;
  mkt.m_firms = 2;
  mkt.firm_prefs = {{{0b11}}, {{0b01, 0b10}}};
  mkt.worker_prefs = {{{0, 1}}, {{1, 0}}};
  mkt.validate();
  return mkt;
}

// Same market except f2 ranks the pair first; the demand type becomes
// totally unimodular and a stable matching exists (f2 hires both workers).
inline Market market_with_stable() {
  Market mkt;
  mkt.n_workers = 2;
  mkt.m_firms = 2;
  mkt.firm_prefs = {{{0b11}}, {{0b11, 0b01, 0b10}}};
  mkt.worker_prefs = {{{0, 1}}, {{1, 0}}};
  mkt.validate();
  return mkt;
}

// Three firms, three workers. The demand type is unimodular but not totally
// unimodular, and no stable matching exists.
inline Market market_unimodular_not_tu() {
  Market mkt;
  mkt.n_workers = 3;
  mkt.m_firms = 3;
  mkt.firm_prefs = {{{0b111}}, {{0b001, 0b010}}, {{0b110}}};
  mkt.worker_prefs = {{{0, 1}}, {{1, 0, 2}}, {{0, 2}}};
  mkt.validate();
  return mkt;
}

// Both firms substitutable, yet the union demand type contains (1,-1) next to
// (1,1): substitutability does not imply total unimodularity.
inline Market market_substitutable_not_tu() {
  Market mkt;
  mkt.n_workers = 2;
  mkt.m_firms = 2;
  mkt.firm_prefs = {{{0b11, 0b01, 0b10}}, {{0b01, 0b10}}};
  mkt.worker_prefs = {{{0, 1}}, {{1, 0}}};
  mkt.validate();
  return mkt;
}

// Two firms, three workers; the market behind the divisible-worker
// walkthrough. f1: {w1,w2} > {w3}; f2: {w1,w2} only. Workers disagree about
// which firm is better, which sustains the half/half fractional matching.
inline Market market_walkthrough() {
  Market mkt;
  mkt.n_workers = 3;
  mkt.m_firms = 2;
  mkt.firm_prefs = {{{0b011, 0b100}}, {{0b011}}};
  mkt.worker_prefs = {{{0, 1}}, {{1, 0}}, {{0}}};
  mkt.validate();
  return mkt;
}

// Two firms over a four-worker technology tree ({w1,w2} and {w3} are sibling
// upgrades, {w3,w4} extends {w3}); used by the tech-tree certificate tests.
inline Market market_tree_unit_demand() {
  Market mkt;
  mkt.n_workers = 4;
  mkt.m_firms = 2;
  mkt.firm_prefs = {{{0b0011, 0b0100}}, {{0b1100, 0b0011}}};
  mkt.worker_prefs = {{{0, 1}}, {{0, 1}}, {{1, 0}}, {{1, 0}}};
  mkt.validate();
  return mkt;
}

// Four workers on two branches: {w1,w2} hangs off the root next to
// {w3} -> {w3,w4}. Every worker engages in exactly one upgrade.
inline TechnologyTree tree_two_branch() {
  TechnologyTree t;
  t.n_workers = 4;
  t.vertex_workers = {0b0000, 0b0011, 0b0100, 0b1100};
  t.edges = {{0, 1}, {0, 2}, {2, 3}};
  t.root = 0;
  t.validate();
  return t;
}

// Candidate trees for the pair-or-nothing preferences: {w1} and {w2} as
// separate upgrades with {w1,w2} below {w2} (left) or directly below the
// root (right). In both, w1 engages in two upgrades.
inline TechnologyTree tree_pair_chain() {
  TechnologyTree t;
  t.n_workers = 2;
  t.vertex_workers = {0b00, 0b01, 0b10, 0b11};
  t.edges = {{0, 1}, {0, 2}, {2, 3}};
  t.root = 0;
  t.validate();
  return t;
}

inline TechnologyTree tree_pair_fan() {
  TechnologyTree t;
  t.n_workers = 2;
  t.vertex_workers = {0b00, 0b01, 0b10, 0b11};
  t.edges = {{0, 1}, {0, 2}, {0, 3}};
  t.root = 0;
  t.validate();
  return t;
}

}  // namespace stablematch::fixtures

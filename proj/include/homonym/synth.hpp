#pragma once
// Synthetic corpora with known author ground truth, and clustering quality
// metrics against that truth.
//
// Every synthetic author shares the same name but has a stable coauthor
// pool, home address words, topical title and keyword vocabularies, a few
// journals and subject categories. Generic title and address words are
// drawn from small pools common to all authors, which produces the chance
// coincidences the distance has to ignore. An author may move mid-career
// (new address, topics and most coauthors), with some papers still written
// on the old topic under the new address.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "homonym/cluster.hpp"
#include "homonym/record.hpp"

namespace homonym {

struct GeneratorParams {
    std::size_t n_authors = 5;
    std::size_t papers_min = 20;
    std::size_t papers_max = 20;

    std::size_t coauthor_pool = 8;
    std::size_t coauthors_min = 1;
    std::size_t coauthors_max = 4;
    double coauthor_rate = 0.8; // chance a coauthor slot comes from the author's pool

    std::size_t address_words = 6;
    std::size_t address_vocabulary = 3000;
    std::size_t common_address_words = 12;
    std::size_t common_address_per_paper = 2;
    double address_overlap = 0.85; // chance each home address word appears on a paper

    std::size_t topic_words = 30;
    std::size_t title_vocabulary = 20000;
    std::size_t common_title_words = 300;
    std::size_t title_words = 9;
    double title_overlap = 0.6; // chance a title word is topical rather than generic

    std::size_t keyword_pool = 15;
    std::size_t keyword_vocabulary = 10000;
    std::size_t keywords_per_paper = 4;
    double keyword_overlap = 0.8;

    std::size_t subject_vocabulary = 250;
    std::size_t subjects_per_author = 2;
    std::size_t journal_vocabulary = 400;
    std::size_t journals_per_author = 4;
    double email_rate = 0.5;

    double move_rate = 0.4;    // chance an author changes affiliation and topic
    double pending_rate = 0.1; // after a move, chance a paper is on the old topic

    int first_year = 1975;
    int last_year = 2010;
    int career_min = 8;
    int career_max = 30;

    std::uint64_t seed = 20070424;
    std::string query_author = "Smith, J";

    // Throws std::invalid_argument for zero counts, empty ranges or rates
    // outside [0, 1].
    void validate() const;
};

struct SyntheticCorpus {
    Corpus corpus;
    std::vector<int> truth; // record id -> author id
    std::string tsv;        // the export the corpus was parsed from
};

SyntheticCorpus generate(const GeneratorParams& params);

struct QualityMetrics {
    std::size_t records = 0;
    std::size_t authors = 0;
    std::size_t clusters = 0;
    double purity = 0.0;
    double split_rate = 0.0;
    std::uint64_t false_positive_pairs = 0;
    std::uint64_t false_negative_pairs = 0;
};

// Clusters must partition the ids 0..truth.size()-1.
QualityMetrics evaluate(std::span<const Cluster> clusters, std::span<const int> truth);

void write_truth_csv(std::ostream& out, std::span<const int> truth);
void write_metrics_csv(std::ostream& out, const QualityMetrics& metrics);

// Deterministic pronounceable word for a vocabulary index.
std::string pseudo_word(std::uint64_t index);

} // namespace homonym

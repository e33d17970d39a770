#pragma once

// Embedded English lexicon backing the deterministic fixture providers:
// synonym groups (one POS tag per group, disjoint vocabularies), antonym
// pairs, a function-word tag dictionary, and a gazetteer for entity
// recognition. Real deployments swap in masked-LM / NER adapters; everything
// in this file is fixed data so desk-scale runs are reproducible bit-for-bit.

#include <algorithm>
#include <cstring>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sealmark/hash.hpp"
#include "sealmark/unicode.hpp"

namespace sealmark {

namespace lexdata {

// "TAG:word,word,word" — first member is the canonical group head.
inline constexpr const char* kSynonymGroups[] = {
    // singular nouns
    "NN:plan,proposal,scheme,blueprint",
    "NN:meeting,session,gathering,assembly",
    "NN:project,initiative,venture,undertaking",
    "NN:business,company,firm,enterprise",
    "NN:deal,bargain,discount,markdown",
    "NN:report,statement,announcement,bulletin",
    "NN:market,sector,industry,marketplace",
    "NN:growth,expansion,upturn,surge",
    "NN:decline,downturn,slump,slide",
    "NN:customer,client,shopper,buyer",
    "NN:product,item,gadget,appliance",
    "NN:sale,transaction,purchase",
    "NN:profit,gain,return,payoff",
    "NN:strategy,approach,method,tactic",
    "NN:chance,opportunity,prospect,opening",
    "NN:problem,issue,difficulty,trouble",
    "NN:result,outcome,consequence,upshot",
    "NN:worker,employee,staffer,laborer",
    "NN:leader,chief,head,boss",
    "NN:idea,concept,notion,thought",
    "NN:goal,target,objective,aim",
    "NN:speech,address,talk,lecture",
    "NN:crowd,throng,multitude,mob",
    "NN:store,shop,outlet,boutique",
    "NN:price,cost,charge,fee",
    "NN:money,cash,capital",
    "NN:holiday,vacation,getaway",
    "NN:law,statute,regulation,ordinance",
    "NN:team,squad,crew,unit",
    "NN:game,contest,matchup",
    "NN:movie,film,picture,flick",
    "NN:house,home,residence,dwelling",
    "NN:car,vehicle,automobile,auto",
    "NN:food,fare,cuisine,nourishment",
    "NN:doctor,physician,clinician",
    "NN:school,academy,institute",
    "NN:college,university,campus",
    "NN:effort,endeavor,attempt",
    "NN:question,query,inquiry",
    "NN:answer,reply,response",
    "NN:letter,note,memo,missive",
    "NN:trip,journey,voyage,excursion",
    "NN:award,prize,trophy,accolade",
    "NN:exhibition,showcase,expo",
    "NN:area,region,zone,district",
    "NN:city,town,municipality,metropolis",
    "NN:country,nation,homeland",
    "NN:storm,tempest,squall",
    "NN:rain,rainfall,drizzle,downpour",
    "NN:illness,sickness,ailment,malady",
    "NN:medicine,drug,remedy,medication",
    "NN:research,scholarship,investigation",
    "NN:discovery,finding,breakthrough,revelation",
    "NN:technology,machinery,hardware",
    "NN:software,program,application,app",
    "NN:website,site,portal,webpage",
    "NN:data,information,intel",
    "NN:network,grid,mesh",
    "NN:fun,amusement,enjoyment,merriment",
    "NN:action,step,measure,maneuver",
    "NN:economy",             // membership-only: no substitution candidates
    "NN:weather,climate",     // two members: always skipped (< 2 candidates)
    // plural nouns
    "NNS:plans,proposals,schemes,blueprints",
    "NNS:deals,bargains,discounts,markdowns",
    "NNS:sales,transactions,purchases",
    "NNS:reports,statements,announcements,bulletins",
    "NNS:customers,clients,shoppers,buyers",
    "NNS:products,items,gadgets,appliances",
    "NNS:profits,returns,payoffs,earnings",
    "NNS:workers,employees,staffers,laborers",
    "NNS:prices,costs,charges,fees",
    "NNS:stores,shops,outlets,boutiques",
    "NNS:goals,targets,objectives,aims",
    "NNS:problems,issues,difficulties,troubles",
    "NNS:results,outcomes,consequences",
    "NNS:opportunities,prospects,openings,chances",
    "NNS:giveaways,freebies,handouts",
    "NNS:promotions,campaigns,drives",
    "NNS:savings,reductions,rebates",
    "NNS:crowds,throngs,multitudes",
    "NNS:breaks,pauses,intermissions",
    "NNS:changes,shifts,adjustments,revisions",
    // base-form verbs
    "VB:improve,boost,enhance,strengthen",
    "VB:launch,start,initiate,begin",
    "VB:offer,provide,supply,furnish",
    "VB:buy,acquire,obtain,procure",
    "VB:sell,vend,peddle",
    "VB:grow,expand,enlarge,broaden",
    "VB:reduce,lower,decrease,diminish",
    "VB:increase,raise,amplify",
    "VB:decide,determine,resolve,settle",
    "VB:announce,declare,proclaim",
    "VB:build,construct,assemble,erect",
    "VB:create,produce,generate",
    "VB:help,assist,aid,support",
    "VB:change,alter,modify,adjust",
    "VB:keep,retain,preserve,maintain",
    "VB:find,locate,discover,uncover",
    "VB:move,shift,relocate,transfer",
    "VB:visit,attend,tour",
    "VB:watch,observe,view,monitor",
    "VB:say,state,remark,mention",
    "VB:think,believe,reckon,suppose",
    "VB:want,desire,crave",
    "VB:need,require,necessitate",
    "VB:test,examine,evaluate,assess",
    "VB:display,exhibit,present",
    "VB:act,respond,react",
    // past-tense verbs
    "VBD:decided,agreed,resolved,settled",
    "VBD:said,stated,remarked,noted",
    "VBD:launched,started,initiated,began",
    "VBD:announced,declared,proclaimed,revealed",
    "VBD:showed,demonstrated,indicated,signaled",
    "VBD:dropped,fell,declined,slipped",
    "VBD:rose,climbed,jumped,surged",
    "VBD:offered,provided,supplied,furnished",
    "VBD:bought,acquired,obtained,procured",
    "VBD:sold,vended,peddled",
    "VBD:improved,boosted,enhanced,strengthened",
    "VBD:reduced,lowered,decreased,diminished",
    "VBD:increased,raised,amplified",
    "VBD:built,constructed,assembled,erected",
    "VBD:created,produced,generated",
    "VBD:helped,assisted,aided,supported",
    "VBD:changed,altered,modified,adjusted",
    "VBD:kept,retained,preserved,maintained",
    "VBD:found,located,discovered,uncovered",
    "VBD:moved,shifted,relocated,transferred",
    "VBD:visited,attended,toured",
    "VBD:watched,observed,viewed,monitored",
    "VBD:reported,recounted,described,detailed",
    "VBD:planned,arranged,organized,orchestrated",
    "VBD:opened,unveiled,inaugurated",
    "VBD:closed,shut,shuttered",
    "VBD:won,captured,claimed,secured",
    "VBD:lost,forfeited,surrendered",
    "VBD:grew,expanded,enlarged,broadened",
    "VBD:finished,completed,concluded,wrapped",
    "VBD:addressed,tackled,confronted",
    // gerunds / present participles
    "VBG:growing,expanding,increasing,rising",
    "VBG:offering,providing,supplying,furnishing",
    "VBG:falling,declining,dropping,slipping",
    "VBG:improving,boosting,enhancing,strengthening",
    "VBG:launching,starting,initiating,beginning",
    "VBG:planning,arranging,organizing",
    "VBG:buying,acquiring,obtaining,procuring",
    "VBG:selling,vending,peddling",
    "VBG:creating,producing,generating",
    "VBG:watching,observing,viewing,monitoring",
    "VBG:missing,skipping,forgoing",
    // past participles
    "VBN:expected,anticipated,predicted,projected",
    "VBN:scheduled,slated,booked",
    "VBN:designed,engineered,crafted",
    "VBN:situated,positioned,stationed",
    // present tense, non-3rd person
    "VBP:expect,anticipate,predict,foresee",
    "VBP:agree,concur,assent",
    "VBP:remain,stay,linger",
    "VBP:continue,persist,endure",
    // present tense, 3rd person singular
    "VBZ:says,states,remarks,mentions",
    "VBZ:improves,boosts,enhances,strengthens",
    "VBZ:offers,provides,supplies,furnishes",
    "VBZ:runs,sprints,jogs,dashes",
    "VBZ:grows,expands,enlarges,broadens",
    "VBZ:falls,declines,drops,slips",
    "VBZ:rises,climbs,gains,jumps",
    "VBZ:starts,begins,commences",
    "VBZ:sells,vends,retails",
    "VBZ:buys,acquires,obtains",
    "VBZ:keeps,retains,preserves,maintains",
    "VBZ:needs,requires,necessitates",
    "VBZ:displays,exhibits,presents",
    // adjectives
    "JJ:quick,fast,rapid,swift,speedy",
    "JJ:big,large,huge,sizable,substantial",
    "JJ:small,little,tiny,modest,slight",
    "JJ:new,fresh,recent,novel",
    "JJ:old,aged,ancient,vintage",
    "JJ:good,fine,decent,solid",
    "JJ:bad,poor,lousy,subpar",
    "JJ:happy,glad,pleased,delighted",
    "JJ:sad,unhappy,gloomy,downcast",
    "JJ:important,significant,crucial,vital",
    "JJ:strong,robust,sturdy,powerful",
    "JJ:weak,feeble,frail,flimsy",
    "JJ:popular,favored,trendy,fashionable",
    "JJ:expensive,costly,pricey",
    "JJ:cheap,inexpensive,affordable,economical",
    "JJ:difficult,hard,tough,challenging",
    "JJ:easy,simple,effortless,straightforward",
    "JJ:beautiful,lovely,gorgeous,stunning",
    "JJ:busy,hectic,bustling,frantic",
    "JJ:careful,cautious,prudent,wary",
    "JJ:early,initial,preliminary",
    "JJ:late,tardy,delayed,overdue",
    "JJ:high-definition",  // membership-only
    // adverbs
    "RB:quickly,rapidly,swiftly,speedily,briskly",
    "RB:slowly,gradually,steadily,sluggishly",
    "RB:greatly,significantly,substantially,considerably,markedly",
    "RB:recently,lately,newly,freshly",
    "RB:clearly,plainly,evidently,obviously",
    "RB:carefully,cautiously,prudently,warily",
    "RB:quietly,silently,softly,noiselessly",
    "RB:strongly,firmly,forcefully,powerfully",
    "RB:nearly,almost,practically,virtually",
    "RB:finally,eventually,ultimately,lastly",
    "RB:together,jointly,collectively",
    "RB:often,frequently,regularly,routinely",
    "RB:soon,shortly,presently,imminently",
    // comparatives / superlatives
    "JJR:bigger,larger,greater",
    "JJR:smaller,lesser,slighter",
    "JJR:faster,quicker,speedier",
    "JJR:stronger,sturdier,tougher",
    "JJS:biggest,largest,greatest",
    "JJS:smallest,slightest,tiniest",
    "JJS:fastest,quickest,speediest",
    "RBR:sooner,earlier",
};

inline constexpr const char* kAntonymPairs[] = {
    "increase|decrease", "increase|reduce",   "raise|lower",
    "rose|fell",         "rises|falls",       "climbed|declined",
    "buy|sell",          "bought|sold",       "buys|sells",
    "buying|selling",    "quickly|slowly",    "quick|slow",
    "fast|slow",         "big|small",         "large|small",
    "bigger|smaller",    "biggest|smallest",  "improve|worsen",
    "improved|worsened", "strong|weak",       "happy|sad",
    "glad|unhappy",      "good|bad",          "fine|poor",
    "easy|difficult",    "easy|hard",         "simple|tough",
    "cheap|expensive",   "inexpensive|costly","early|late",
    "won|lost",          "opened|closed",     "grew|shrank",
    "growing|falling",   "expanding|declining", "growth|decline",
    "profit|loss",       "sale|freeze",
};

// "word TAG"
inline constexpr const char* kFunctionWords[] = {
    "the DT",   "a DT",     "an DT",     "this DT",  "that DT",  "these DT",
    "those DT", "each DT",  "every DT",  "some DT",  "any DT",   "no DT",
    "all DT",   "both DT",  "another DT","such JJ",
    "to TO",    "of IN",    "in IN",     "on IN",    "at IN",    "with IN",
    "for IN",   "from IN",  "by IN",     "about IN", "into IN",  "over IN",
    "under IN", "after IN", "before IN", "during IN","through IN",
    "between IN","against IN","without IN","near IN","across IN","along IN",
    "around IN","since IN", "until IN",  "within IN","despite IN",
    "toward IN","upon IN",  "as IN",     "than IN",  "because IN","while IN",
    "if IN",    "though IN","although IN","whether IN",
    "and CC",   "or CC",    "but CC",    "nor CC",   "yet CC",   "so CC",
    "is VBZ",   "was VBD",  "are VBP",   "were VBD", "be VB",    "been VBN",
    "being VBG","am VBP",   "has VBZ",   "have VBP", "had VBD",  "having VBG",
    "do VBP",   "does VBZ", "did VBD",   "done VBN",
    "will MD",  "would MD", "could MD",  "should MD","may MD",   "might MD",
    "can MD",   "must MD",  "shall MD",
    "i PRP",    "you PRP",  "he PRP",    "she PRP",  "it PRP",   "we PRP",
    "they PRP", "me PRP",   "him PRP",   "us PRP",   "them PRP", "her PRP",
    "my PRP$",  "your PRP$","his PRP$",  "its PRP$", "our PRP$", "their PRP$",
    "not RB",   "also RB",  "then RB",   "now RB",   "here RB",  "there EX",
    "however RB","still RB","just RB",   "even RB",  "again RB", "once RB",
    "too RB",   "very RB",  "quite RB",  "rather RB","much RB",  "well RB",
    "more RBR", "most RBS", "less RBR",  "least RBS",
    "who WP",   "what WP",  "which WDT", "when WRB", "where WRB","why WRB",
    "how WRB",  "one CD",   "two CD",    "three CD", "four CD",  "five CD",
    "six CD",   "seven CD", "eight CD",  "nine CD",  "ten CD",
};

inline constexpr const char* kGazetteer[] = {
    // given names
    "James", "Mary", "John", "Robert", "Patricia", "Michael", "Linda",
    "David", "William", "Barbara", "Richard", "Susan", "Joseph", "Jessica",
    "Thomas", "Sarah", "Charles", "Karen", "Daniel", "Nancy", "Matthew",
    "Lisa", "Anthony", "Betty", "Mark", "Helen", "Steven", "Sandra",
    "Andrew", "Donna", "Barack", "Emily", "Rachel", "Laura", "Kevin",
    "Brian", "Scott", "Amanda", "Melissa", "Deborah",
    // surnames
    "Smith", "Johnson", "Williams", "Brown", "Jones", "Garcia", "Miller",
    "Davis", "Rodriguez", "Martinez", "Wilson", "Anderson", "Taylor",
    "Moore", "Jackson", "Martin", "Lee", "Thompson", "White", "Harris",
    "Clark", "Lewis", "Walker", "Young", "Allen", "King", "Wright",
    "Obama", "Rose", "Schutzman", "Hernandez", "Lopez",
    // organizations
    "QVC", "NASA", "IBM", "FBI", "NATO", "UNESCO", "Google", "Microsoft",
    "Amazon", "Apple", "Walmart", "Target", "Boeing", "Intel", "Nasdaq",
    "Toyota", "Honda", "Samsung", "Sony", "Nike", "Adidas", "Pepsi",
    "Nordstrom", "Newbridge", "Congress", "Senate",
    // places
    "America", "Washington", "California", "Texas", "Chicago", "Boston",
    "Seattle", "Denver", "Atlanta", "Miami", "Dallas", "Houston", "Phoenix",
    "Portland", "Orlando", "Austin", "Nashville", "Detroit", "Cleveland",
    "Baltimore", "London", "Paris", "Tokyo", "Berlin", "Madrid", "Rome",
    "Sydney", "Toronto", "Santa", "Ana",
    // dates and holidays
    "January", "February", "March", "April", "May", "June", "July",
    "August", "September", "October", "November", "December", "Monday",
    "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday",
    "Thanksgiving", "Christmas", "Easter", "Halloween",
};

}  // namespace lexdata

class Lexicon {
public:
    struct Entry {
        std::string tag;
        int group = -1;  // index into groups(); -1 for membership-only words
    };

    static const Lexicon& instance() {
        static const Lexicon lex;
        return lex;
    }

    bool contains(std::string_view word) const {
        return content_.count(to_lower_ascii(word)) > 0;
    }

    // Tag of a content word, or empty if unknown.
    std::string content_tag(std::string_view word) const {
        auto it = content_.find(to_lower_ascii(word));
        return it == content_.end() ? std::string() : it->second.tag;
    }

    std::string function_tag(std::string_view word) const {
        auto it = function_.find(to_lower_ascii(word));
        return it == function_.end() ? std::string() : it->second;
    }

    bool is_function_word(std::string_view word) const {
        return function_.count(to_lower_ascii(word)) > 0;
    }

    // Synonym-group members for a word (including the word itself), ranked
    // in the group's fixed authoring order. Empty if the word has no group.
    const std::vector<std::string>& group_members(std::string_view word) const {
        static const std::vector<std::string> empty;
        auto it = content_.find(to_lower_ascii(word));
        if (it == content_.end() || it->second.group < 0) return empty;
        return groups_[static_cast<std::size_t>(it->second.group)];
    }

    // Stable identifier of the word's synonym group, used by the embedding
    // provider. Words without a group hash to themselves.
    std::string group_id(std::string_view word) const {
        auto lower = to_lower_ascii(word);
        auto it = content_.find(lower);
        if (it == content_.end() || it->second.group < 0) return "w:" + lower;
        return "g:" + groups_[static_cast<std::size_t>(it->second.group)].front();
    }

    bool are_antonyms(std::string_view a, std::string_view b) const {
        auto key = ordered_pair(to_lower_ascii(a), to_lower_ascii(b));
        return antonyms_.count(key) > 0;
    }

    bool in_gazetteer(std::string_view surface) const {
        return gazetteer_.count(std::string(surface)) > 0;
    }

    std::size_t group_count() const { return groups_.size(); }

    // Digest of the raw data tables; part of provider fingerprints.
    const std::string& fingerprint() const { return fingerprint_; }

private:
    Lexicon() {
        std::string fp_material;
        for (const char* raw : lexdata::kSynonymGroups) {
            fp_material += raw;
            fp_material += '\n';
            std::string_view s(raw);
            auto colon = s.find(':');
            std::string tag(s.substr(0, colon));
            std::vector<std::string> members;
            std::size_t pos = colon + 1;
            while (pos <= s.size()) {
                auto comma = s.find(',', pos);
                if (comma == std::string_view::npos) comma = s.size();
                members.emplace_back(s.substr(pos, comma - pos));
                pos = comma + 1;
            }
            int group = -1;
            if (members.size() >= 2) {
                group = static_cast<int>(groups_.size());
                groups_.push_back(members);
            }
            for (const auto& m : members) {
                if (!content_.emplace(m, Entry{tag, group}).second)
                    throw std::logic_error("lexicon: duplicate content word " + m);
            }
        }
        for (const char* raw : lexdata::kAntonymPairs) {
            fp_material += raw;
            fp_material += '\n';
            std::string_view s(raw);
            auto bar = s.find('|');
            antonyms_.insert(
                ordered_pair(std::string(s.substr(0, bar)), std::string(s.substr(bar + 1))));
        }
        for (const char* raw : lexdata::kFunctionWords) {
            fp_material += raw;
            fp_material += '\n';
            std::string_view s(raw);
            auto space = s.find(' ');
            std::string word(s.substr(0, space));
            if (content_.count(word))
                throw std::logic_error("lexicon: word in both tables: " + word);
            function_.emplace(word, std::string(s.substr(space + 1)));
        }
        for (const char* raw : lexdata::kGazetteer) {
            fp_material += raw;
            fp_material += '\n';
            gazetteer_.insert(raw);
        }
        fingerprint_ = sha256_hex(fp_material).substr(0, 16);
    }

    static std::pair<std::string, std::string> ordered_pair(std::string a, std::string b) {
        if (b < a) std::swap(a, b);
        return {std::move(a), std::move(b)};
    }

    std::map<std::string, Entry> content_;
    std::vector<std::vector<std::string>> groups_;
    std::set<std::pair<std::string, std::string>> antonyms_;
    std::map<std::string, std::string> function_;
    std::set<std::string> gazetteer_;
    std::string fingerprint_;
};

}  // namespace sealmark

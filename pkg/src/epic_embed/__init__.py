"""epic-embed: turn an e-book into word embeddings you can query.

The pipeline runs ingestion (EPUB or plain text), cleaning, sentence and word
tokenization, normalization (stemming or lemmatization plus stopword
removal), corpus statistics, shallow embedding training, and cosine
similarity queries. Each stage is usable on its own; the ``epic-embed``
command chains them with caching.
"""

from .corpus import (
    LengthDistribution,
    Vocabulary,
    build_vocabulary,
    cooccurrence_pairs,
    length_distribution,
    read_vocabulary,
    top_frequencies,
    write_vocabulary,
)
from .embed import (
    EmbeddingModel,
    ForwardResult,
    TrainConfig,
    evaluate_loss,
    export_text_vectors,
    forward,
    init_model,
    load_model,
    noise_distribution,
    read_text_vectors,
    save_model,
    softmax,
    train,
    train_step,
)
from .errors import (
    DimensionMismatch,
    EmptySpine,
    EmptyTrainingData,
    EmptyVocabulary,
    EpicEmbedError,
    IndexOutOfVocab,
    MalformedOpf,
    MissingContainer,
    ModelFormatError,
    NotZip,
    UnknownWord,
    VocabTooSmall,
    ZeroVector,
)
from .ingest import (
    EbookArchive,
    SectionText,
    epub_to_sections,
    flatten_xhtml,
    load_sections,
    open_epub,
)
from .normalize import (
    LemmaLexicon,
    default_lexicon,
    lemmatize,
    load_stopwords,
    normalize_corpus,
    remove_stopwords,
)
from .porter import porter_stem
from .similarity import SimilarityResult, cosine, get_vector, most_similar
from .textprep import (
    CleanCorpus,
    clean_text,
    load_abbreviations,
    read_token_corpus,
    sentence_lengths,
    split_sentences,
    tokenize_corpus,
    tokenize_words,
    write_token_corpus,
)

__version__ = "0.1.0"

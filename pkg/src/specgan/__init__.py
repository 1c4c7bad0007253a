"""Generation of symbolic reasoning problems with Transformer GANs.

Subpackages cover the formula grammars and semantics, the pattern-based
specification generator, the satisfiability oracle, the dataset pipeline,
a small autodiff tensor engine, the GAN/WGAN-GP and classifier training
loops, and the evaluation CLI.
"""

__version__ = "0.1.0"

//! Architecture hyperparameters for the two model families.

use numkit::Real;

/// Light-encoder / heavy-decoder multi-task student.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudentConfig {
    pub encoder_layers: usize,
    pub decoder_layers: usize,
    pub embed_dim: usize,
    pub heads: usize,
    pub ff_hidden: usize,
}

impl StudentConfig {
    /// Full-size configuration; `embed_dim` distinguishes the 96 and 128
    /// model variants.
    pub fn paper(embed_dim: usize) -> StudentConfig {
        StudentConfig { encoder_layers: 1, decoder_layers: 6, embed_dim, heads: 8, ff_hidden: 512 }
    }

    /// Desk-scale configuration used by fast tests.
    pub fn toy() -> StudentConfig {
        StudentConfig { encoder_layers: 1, decoder_layers: 6, embed_dim: 16, heads: 2, ff_hidden: 32 }
    }

    pub fn validate(&self) {
        assert!(self.encoder_layers >= 1 && self.decoder_layers >= 1);
        assert_eq!(self.embed_dim % self.heads, 0, "embed_dim must divide into heads");
    }
}

/// Heavy-encoder / light-decoder single-task teacher.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeacherConfig {
    pub encoder_layers: usize,
    pub embed_dim: usize,
    pub heads: usize,
    pub ff_hidden: usize,
    /// Pre-softmax logits are squashed to `[-logit_clip, logit_clip]`.
    pub logit_clip: Real,
}

impl TeacherConfig {
    pub fn paper() -> TeacherConfig {
        TeacherConfig { encoder_layers: 6, embed_dim: 128, heads: 8, ff_hidden: 512, logit_clip: 10.0 }
    }

    pub fn toy() -> TeacherConfig {
        TeacherConfig { encoder_layers: 6, embed_dim: 16, heads: 2, ff_hidden: 32, logit_clip: 10.0 }
    }

    pub fn validate(&self) {
        assert!(self.encoder_layers >= 1);
        assert_eq!(self.embed_dim % self.heads, 0, "embed_dim must divide into heads");
    }
}

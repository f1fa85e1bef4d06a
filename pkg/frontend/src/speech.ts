// Auditory feedback: announce each typed character. Best effort only;
// anything that fails (no speech engine, muted platform) stays silent.

const CHAR_NAMES: Record<string, string> = {
  " ": "space",
  ".": "period",
  ",": "comma",
  '"': "quote",
  "'": "apostrophe",
  ";": "semicolon",
  "?": "question mark",
  "|": "bar",
  "_": "underscore",
  "-": "hyphen",
};

export function spokenName(char: string): string {
  const named = CHAR_NAMES[char];
  if (named) return named;
  if (char >= "A" && char <= "Z") return `capital ${char}`;
  return char;
}

export class Speaker {
  enabled = true;

  speak(char: string): void {
    if (!this.enabled) return;
    try {
      const synth = (globalThis as { speechSynthesis?: SpeechSynthesis }).speechSynthesis;
      if (!synth) return;
      const utterance = new SpeechSynthesisUtterance(spokenName(char));
      utterance.rate = 1.4;
      synth.speak(utterance);
    } catch {
      // feedback is an enhancement, never a blocker
    }
  }
}

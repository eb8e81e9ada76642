import { spawn, type ChildProcessWithoutNullStreams } from 'node:child_process';
import { fileURLToPath } from 'node:url';
import { createInterface } from 'node:readline';

export const CLI = fileURLToPath(new URL('../dist/cli.js', import.meta.url));
export const FIXTURES = fileURLToPath(new URL('./fixtures', import.meta.url));

/** Spawned adapter with promise-based line reading for assertions. */
export class AdapterProc {
  proc: ChildProcessWithoutNullStreams;
  exit: Promise<number | null>;
  stderr = '';
  private lines: string[] = [];
  private waiters: Array<(line: string) => void> = [];

  constructor(args: string[]) {
    this.proc = spawn(process.execPath, [CLI, ...args]);
    const rl = createInterface({ input: this.proc.stdout, crlfDelay: Infinity });
    rl.on('line', (line) => {
      const waiter = this.waiters.shift();
      if (waiter) {
        waiter(line);
      } else {
        this.lines.push(line);
      }
    });
    this.proc.stderr.on('data', (chunk) => {
      this.stderr += chunk.toString();
    });
    this.exit = new Promise((resolve) => {
      this.proc.on('close', (code) => resolve(code));
    });
  }

  nextLine(timeoutMs = 5000): Promise<string> {
    const queued = this.lines.shift();
    if (queued !== undefined) return Promise.resolve(queued);
    return new Promise((resolve, reject) => {
      const timer = setTimeout(
        () => reject(new Error('timed out waiting for adapter output')),
        timeoutMs,
      );
      this.waiters.push((line) => {
        clearTimeout(timer);
        resolve(line);
      });
    });
  }

  async nextJson(): Promise<Record<string, unknown>> {
    return JSON.parse(await this.nextLine());
  }

  writeLine(line: string): void {
    this.proc.stdin.write(line + '\n');
  }

  send(id: number, text: string): void {
    this.writeLine(JSON.stringify({ id, text }));
  }

  endInput(): void {
    this.proc.stdin.end();
  }

  kill(): void {
    this.proc.kill();
  }
}
